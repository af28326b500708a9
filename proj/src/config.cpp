#include "cmplchg/config.hpp"

#include <fstream>
#include <set>
#include <string>

#include "cmplchg/errors.hpp"

namespace cmplchg {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::config_error, what); }

const json& require_object(const json& j, const std::string& key) {
    if (!j.contains(key)) bad("missing required section \"" + key + "\"");
    const json& v = j.at(key);
    if (!v.is_object()) bad("section \"" + key + "\" must be an object");
    return v;
}

void reject_unknown_keys(const json& j, const std::string& section,
                         std::initializer_list<const char*> allowed) {
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& item : j.items())
        if (!ok.count(item.key()))
            bad("unknown key \"" + item.key() + "\" in section \"" + section + "\"");
}

double get_number(const json& j, const std::string& section, const std::string& key) {
    if (!j.contains(key)) bad("missing key \"" + key + "\" in section \"" + section + "\"");
    const json& v = j.at(key);
    if (!v.is_number()) bad("key \"" + section + "." + key + "\" must be a number");
    return v.get<double>();
}

double get_number_or(const json& j, const std::string& section, const std::string& key,
                     double fallback) {
    return j.contains(key) ? get_number(j, section, key) : fallback;
}

int get_int(const json& j, const std::string& section, const std::string& key, int fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) bad("key \"" + section + "." + key + "\" must be an integer");
    return v.get<int>();
}

std::string get_string(const json& j, const std::string& section, const std::string& key,
                       const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_string()) bad("key \"" + section + "." + key + "\" must be a string");
    return v.get<std::string>();
}

std::vector<double> get_number_list(const json& j, const std::string& section,
                                    const std::string& key) {
    if (!j.contains(key)) bad("missing key \"" + key + "\" in section \"" + section + "\"");
    const json& v = j.at(key);
    if (!v.is_array() || v.empty()) bad("key \"" + section + "." + key + "\" must be a nonempty array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) {
        if (!e.is_number()) bad("key \"" + section + "." + key + "\" must contain only numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

DomainConfig parse_domain(const json& j) {
    DomainConfig d;
    d.shape = get_string(j, "domain", "shape", "");
    if (d.shape == "cylinder") {
        reject_unknown_keys(j, "domain", {"shape", "radius", "height", "nr", "ntheta", "nz"});
        d.radius = get_number(j, "domain", "radius");
        d.height = get_number(j, "domain", "height");
        d.nr = get_int(j, "domain", "nr", 0);
        d.ntheta = get_int(j, "domain", "ntheta", 0);
        d.nz = get_int(j, "domain", "nz", 0);
        if (!(d.radius > 0.0) || !(d.height > 0.0))
            bad("domain.radius and domain.height must be > 0");
        if (d.nr < 1 || d.ntheta < 1 || d.nz < 1)
            bad("domain.nr, domain.ntheta, domain.nz must all be >= 1");
    } else if (d.shape == "box") {
        reject_unknown_keys(j, "domain", {"shape", "lx", "ly", "lz", "nx", "ny", "nz"});
        d.lx = get_number(j, "domain", "lx");
        d.ly = get_number(j, "domain", "ly");
        d.lz = get_number(j, "domain", "lz");
        d.nx = get_int(j, "domain", "nx", 0);
        d.ny = get_int(j, "domain", "ny", 0);
        d.nz = get_int(j, "domain", "nz", 0);
        if (!(d.lx > 0.0) || !(d.ly > 0.0) || !(d.lz > 0.0))
            bad("domain.lx, domain.ly, domain.lz must all be > 0");
        if (d.nx < 1 || d.ny < 1 || d.nz < 1)
            bad("domain.nx, domain.ny, domain.nz must all be >= 1");
    } else {
        bad("domain.shape must be \"cylinder\" or \"box\"");
    }
    return d;
}

KernelSpec parse_kernel(const json& j) {
    reject_unknown_keys(j, "kernel", {"kind", "sigma", "epsilon", "d"});
    KernelSpec spec;
    const std::string kind = get_string(j, "kernel", "kind", "");
    if (kind.empty()) bad("missing key \"kind\" in section \"kernel\"");
    spec.kind = parse_kernel_kind(kind);
    spec.sigma = get_number_or(j, "kernel", "sigma", spec.sigma);
    spec.epsilon = get_number_or(j, "kernel", "epsilon", spec.epsilon);
    spec.d = get_number_or(j, "kernel", "d", spec.d);
    validate(spec);
    return spec;
}

SynthesisConfig parse_synthesis(const json& j) {
    reject_unknown_keys(j, "synthesis", {"mode", "i", "j", "k", "alpha"});
    SynthesisConfig s;
    s.mode = get_string(j, "synthesis", "mode", s.mode);
    if (s.mode != "weak" && s.mode != "strong")
        bad("synthesis.mode must be \"weak\" or \"strong\"");
    s.i = get_int(j, "synthesis", "i", s.i);
    s.j = get_int(j, "synthesis", "j", s.j);
    s.k = get_int(j, "synthesis", "k", s.k);
    if (s.i < 0 || s.j < 0 || s.k < 0) bad("synthesis indices must be nonnegative");
    if (s.i == s.j)
        throw Error(ErrorKind::invalid_pair,
                    "synthesis.i and synthesis.j must differ: a quadruple pairs two "
                    "distinct eigenfunctions");
    if (s.mode == "strong" && (s.k == s.i || s.k == s.j))
        throw Error(ErrorKind::invalid_pair,
                    "synthesis.k must differ from i and j in strong mode");
    if (j.contains("alpha")) s.alpha = get_number(j, "synthesis", "alpha");
    return s;
}

PoseScanConfig parse_pose_scan(const json& j) {
    reject_unknown_keys(j, "verify.pose_scan",
                        {"r1", "r2", "r3", "axis", "angle_count", "contact_r3"});
    PoseScanConfig p;
    if (j.contains("r1")) p.r1 = get_number_list(j, "verify.pose_scan", "r1");
    if (j.contains("r2")) p.r2 = get_number_list(j, "verify.pose_scan", "r2");
    p.r3 = get_number_list(j, "verify.pose_scan", "r3");
    if (j.contains("axis")) {
        const json& a = j.at("axis");
        if (!a.is_array() || a.size() != 3) bad("verify.pose_scan.axis must be an array of 3 numbers");
        for (int c = 0; c < 3; ++c) {
            if (!a[c].is_number()) bad("verify.pose_scan.axis must be an array of 3 numbers");
            p.axis[c] = a[c].get<double>();
        }
    }
    p.angle_count = get_int(j, "verify.pose_scan", "angle_count", p.angle_count);
    if (p.angle_count < 1) bad("verify.pose_scan.angle_count must be >= 1");
    p.contact_r3 = get_number_or(j, "verify.pose_scan", "contact_r3", p.contact_r3);
    for (double r3 : p.r3)
        if (r3 < p.contact_r3) bad("verify.pose_scan.r3 holds a value below contact_r3");
    return p;
}

VerifyConfig parse_verify(const json& j) {
    reject_unknown_keys(j, "verify", {"tol", "pose_scan"});
    VerifyConfig v;
    if (j.contains("tol")) {
        v.tol = get_number(j, "verify", "tol");
        if (!(*v.tol >= 0.0)) bad("verify.tol must be >= 0");
    }
    if (j.contains("pose_scan")) {
        if (!j.at("pose_scan").is_object()) bad("verify.pose_scan must be an object");
        v.pose_scan = parse_pose_scan(j.at("pose_scan"));
    }
    return v;
}

OutputConfig parse_output(const json& j) {
    reject_unknown_keys(j, "output", {"report_path", "export_path", "cache_dir"});
    OutputConfig o;
    o.report_path = get_string(j, "output", "report_path", o.report_path);
    if (j.contains("export_path")) o.export_path = get_string(j, "output", "export_path", "");
    o.cache_dir = get_string(j, "output", "cache_dir", o.cache_dir);
    if (o.report_path.empty()) bad("output.report_path must not be empty");
    if (o.cache_dir.empty()) bad("output.cache_dir must not be empty");
    return o;
}

}  // namespace

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io_error, "cannot open config file \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        bad("config file \"" + path + "\" is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

RunConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) bad("config root must be a JSON object");
    reject_unknown_keys(j, "(root)", {"domain", "kernel", "synthesis", "verify", "output"});
    RunConfig c;
    c.domain = parse_domain(require_object(j, "domain"));
    c.kernel = parse_kernel(require_object(j, "kernel"));
    if (j.contains("synthesis")) c.synthesis = parse_synthesis(require_object(j, "synthesis"));
    if (j.contains("verify")) c.verify = parse_verify(require_object(j, "verify"));
    if (j.contains("output")) c.output = parse_output(require_object(j, "output"));
    return c;
}

Cubature build_domain(const DomainConfig& d) {
    long long n = 0;
    if (d.shape == "cylinder")
        n = 1LL * d.nr * d.ntheta * d.nz;
    else if (d.shape == "box")
        n = 1LL * d.nx * d.ny * d.nz;
    else
        throw Error(ErrorKind::config_error, "domain.shape must be \"cylinder\" or \"box\"");
    if (n > 4096)
        throw Error(ErrorKind::config_error,
                    "requested " + std::to_string(n) +
                        " nodes; the dense-operator cap is 4096 nodes");
    if (d.shape == "cylinder") return build_cylinder(d.radius, d.height, d.nr, d.ntheta, d.nz);
    return build_box(d.lx, d.ly, d.lz, d.nx, d.ny, d.nz);
}

nlohmann::json domain_json(const DomainConfig& d) {
    if (d.shape == "cylinder")
        return {{"shape", "cylinder"}, {"radius", d.radius}, {"height", d.height},
                {"nr", d.nr},          {"ntheta", d.ntheta}, {"nz", d.nz}};
    return {{"shape", "box"}, {"lx", d.lx}, {"ly", d.ly},
            {"lz", d.lz},     {"nx", d.nx}, {"ny", d.ny},
            {"nz", d.nz}};
}

nlohmann::json kernel_json(const KernelSpec& spec) {
    return {{"kind", to_string(spec.kind)},
            {"sigma", spec.sigma},
            {"epsilon", spec.epsilon},
            {"d", spec.d}};
}

nlohmann::json synthesis_json(const SynthesisConfig& s) {
    nlohmann::json j{{"mode", s.mode}, {"i", s.i}, {"j", s.j}};
    if (s.mode == "strong") {
        j["k"] = s.k;
        if (s.alpha) j["alpha"] = *s.alpha;
    }
    return j;
}

}  // namespace cmplchg
