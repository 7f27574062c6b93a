#include <vfcm/spline.hpp>

#include <json.hpp>

#include <fstream>

namespace vfcm {

namespace {
constexpr const char* kAxisNames[3] = {"u", "v", "w"};
}

template <int Dim>
std::string to_json_string(const TensorSpline<Dim>& sp) {
    nlohmann::json j;
    for (int d = 0; d < Dim; ++d) j["degrees"].push_back(sp.knots[d].degree());
    for (int d = 0; d < Dim; ++d) j["knots"][kAxisNames[d]] = sp.knots[d].values();
    for (int d = 0; d < Dim; ++d) j["dims"].push_back(sp.dims[d]);
    j["channels"] = sp.channel_names;
    std::vector<Real> flat;
    flat.reserve(sp.ctrl.size());
    for (long c = 0; c < sp.ctrl.cols(); ++c)
        for (long r = 0; r < sp.ctrl.rows(); ++r) flat.push_back(sp.ctrl(r, c));
    j["ctrl"] = flat;
    return j.dump(2);
}

template <int Dim>
TensorSpline<Dim> spline_from_json_string(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        throw IoError(std::string("spline json: ") + e.what());
    }
    TensorSpline<Dim> sp;
    if (j.at("degrees").size() != Dim || j.at("dims").size() != Dim)
        throw IoError("spline json: dimension mismatch");
    for (int d = 0; d < Dim; ++d) {
        sp.knots[d] = KnotVector(j["degrees"][d].get<int>(),
                                 j["knots"][kAxisNames[d]].get<std::vector<Real>>());
        sp.dims[d] = j["dims"][d].get<int>();
    }
    sp.channel_names = j.value("channels", std::vector<std::string>{});
    const auto flat = j.at("ctrl").get<std::vector<Real>>();
    long total = 1;
    for (int d = 0; d < Dim; ++d) total *= sp.dims[d];
    const long pd = 3 + static_cast<long>(sp.channel_names.size());
    if (static_cast<long>(flat.size()) != total * pd)
        throw IoError("spline json: ctrl array size mismatch");
    sp.ctrl.resize(pd, total);
    for (long c = 0; c < total; ++c)
        for (long r = 0; r < pd; ++r) sp.ctrl(r, c) = flat[c * pd + r];
    sp.validate();
    return sp;
}

template <int Dim>
void save_spline(const TensorSpline<Dim>& sp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << to_json_string(sp) << "\n";
}

template <int Dim>
TensorSpline<Dim> load_spline(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return spline_from_json_string<Dim>(text);
}

template std::string to_json_string<1>(const TensorSpline<1>&);
template std::string to_json_string<2>(const TensorSpline<2>&);
template std::string to_json_string<3>(const TensorSpline<3>&);
template TensorSpline<1> spline_from_json_string<1>(const std::string&);
template TensorSpline<2> spline_from_json_string<2>(const std::string&);
template TensorSpline<3> spline_from_json_string<3>(const std::string&);
template void save_spline<1>(const TensorSpline<1>&, const std::string&);
template void save_spline<2>(const TensorSpline<2>&, const std::string&);
template void save_spline<3>(const TensorSpline<3>&, const std::string&);
template TensorSpline<1> load_spline<1>(const std::string&);
template TensorSpline<2> load_spline<2>(const std::string&);
template TensorSpline<3> load_spline<3>(const std::string&);

}  // namespace vfcm
