#include "cmplchg/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "cmplchg/errors.hpp"

namespace cmplchg {

nlohmann::json pose_json(const Pose& p) {
    return {{"r", {p.r.x1, p.r.x2, p.r.x3}},
            {"axis", {p.axis.x1, p.axis.x2, p.axis.x3}},
            {"angle", p.angle}};
}

nlohmann::json definiteness_json(const DefinitenessReport& r, double tol) {
    return {{"negative_count", r.negative_count},
            {"nonnegative_count", r.nonnegative_count},
            {"max_eigenvalue", r.max_eigenvalue},
            {"certified", r.certified},
            {"tol", tol}};
}

nlohmann::json quadruple_meta_json(const QuadrupleMeta& m) {
    nlohmann::json j{{"mode", m.mode},
                     {"i", m.i},
                     {"j", m.j},
                     {"lambda_i", m.lambda_i},
                     {"lambda_j", m.lambda_j}};
    if (m.k) j["k"] = *m.k;
    if (m.alpha) j["alpha"] = *m.alpha;
    if (m.lambda_k) j["lambda_k"] = *m.lambda_k;
    return j;
}

nlohmann::json verification_json(const VerificationReport& r) {
    nlohmann::json matrix = nlohmann::json::array();
    for (const auto& row : r.matrix) matrix.push_back({row[0], row[1], row[2], row[3]});
    nlohmann::json conditions = nlohmann::json::array();
    for (const auto& c : r.conditions)
        conditions.push_back({{"name", c.name},
                              {"value", c.value},
                              {"required", c.required_relation},
                              {"passed", c.passed}});
    return {{"mode", to_string(r.mode)},
            {"tol", r.tol},
            {"interaction_matrix", matrix},
            {"conditions", conditions},
            {"overall_pass", r.overall_pass},
            {"margin", r.margin}};
}

nlohmann::json pose_scan_json(const PoseScanResult& r) {
    return {{"pose_count",
             r.grid.r1.size() * r.grid.r2.size() * r.grid.r3.size() *
                 static_cast<std::size_t>(r.grid.angle_count)},
            {"min_I", r.min_I},
            {"max_I", r.max_I},
            {"argmin_pose", pose_json(r.argmin_pose)},
            {"argmax_pose", pose_json(r.argmax_pose)},
            {"contact_all_negative", r.contact_all_negative},
            {"attracting_pose_exists", r.attracting_pose_exists}};
}

nlohmann::json eigenvalue_summary_json(const EigenSystem& es, int count) {
    nlohmann::json values = nlohmann::json::array();
    const int n = static_cast<int>(es.eigenvalues.size());
    for (int i = 0; i < n && i < count; ++i) values.push_back(es.eigenvalues[i]);
    return {{"count_total", n},
            {"first", values},
            {"residual_norm", es.residual_norm}};
}

std::string timestamp_utc_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                  tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
    return buf;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(ErrorKind::io_error, "cannot open \"" + path + "\" for writing");
    out << j.dump(2) << '\n';
    if (!out) throw Error(ErrorKind::io_error, "short write to \"" + path + "\"");
}

}  // namespace cmplchg
