// Acceptance gate: ten numbered go/no-go checks over the assembled library
// and the CLI, each printed as a single PASS/FAIL line with the measured
// numbers. Exit status is 0 only when every executed criterion passes.
//
// Usage: cmplchg_acceptance [N]   (N in 1..10; default runs all ten)

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmplchg/cubature.hpp"
#include "cmplchg/discrete_operator.hpp"
#include "cmplchg/errors.hpp"
#include "cmplchg/kernel.hpp"
#include "cmplchg/reference.hpp"
#include "cmplchg/spectral.hpp"
#include "cmplchg/synthesis.hpp"
#include "cmplchg/verify.hpp"

using namespace cmplchg;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

KernelSpec gaussian_spec() {
    KernelSpec s;
    s.kind = KernelKind::smooth_gaussian;
    s.sigma = 0.5;
    s.epsilon = 0.0;
    s.d = 1.2;
    return s;
}

KernelSpec coulomb_spec(double epsilon, double d) {
    KernelSpec s;
    s.kind = KernelKind::coulomb_z;
    s.sigma = 0.5;
    s.epsilon = epsilon;
    s.d = d;
    return s;
}

// Default desk-scale system shared by most criteria.
const Cubature& default_cubature() {
    static const Cubature c = build_cylinder(1.0, 1.0, 3, 8, 6);
    return c;
}

const DiscreteOperator& gaussian_operator() {
    static const DiscreteOperator op = assemble(default_cubature(), gaussian_spec());
    return op;
}

const EigenSystem& gaussian_eigensystem() {
    static const EigenSystem es = decompose(gaussian_operator());
    return es;
}

std::vector<double> random_density(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(0.2, 1.2);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

// --- criteria -------------------------------------------------------------

// 1. One-sided spectrum at the default resolution, with a certification
//    margin and a runtime budget.
Outcome criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const DiscreteOperator op = assemble(default_cubature(), gaussian_spec());
    const EigenSystem es = decompose(op);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    int negatives = 0;
    for (double ev : es.eigenvalues)
        if (ev < 0.0) ++negatives;
    const bool all_negative = negatives == static_cast<int>(es.eigenvalues.size());

    const DefinitenessReport rep = check_definiteness(es, 1e-12);
    const double required = -1e-12 * std::abs(es.eigenvalues.front());
    const bool in_time = seconds < 10.0;

    Outcome o;
    o.pass = all_negative && rep.certified && in_time;
    o.detail = std::to_string(negatives) + "/" + std::to_string(es.eigenvalues.size()) +
               " eigenvalues negative; max eigenvalue " + num(rep.max_eigenvalue) +
               " vs certification bound " + num(required) +
               (rep.certified ? " (margin holds)" : " (margin not met)") + "; " +
               num(seconds) + " s";
    return o;
}

// 2. Eigenfunction pairs verify weakly with the matched value -lambda_0.
Outcome criterion_2() {
    const EigenSystem& es = gaussian_eigensystem();
    const Quadruple q = weak_quadruple(es, 0, 1);
    const InteractionMatrix m = interaction_matrix(gaussian_operator(), q);
    const VerificationReport rep = check_system(m, Mode::weak, default_tol(es));

    const double l0 = es.eigenvalues[0];
    double worst_cross = 0.0;
    for (int a : {0, 1})
        for (int b : {2, 3}) worst_cross = std::max(worst_cross, std::abs(m[a][b]));
    const double matched_rel = std::abs(m[0][1] - (-l0)) / std::abs(l0);

    Outcome o;
    o.pass = rep.overall_pass && worst_cross < 1e-10 * std::abs(l0) && matched_rel <= 1e-12;
    o.detail = std::string(rep.overall_pass ? "weak check passes" : "weak check FAILS") +
               "; worst cross term " + num(worst_cross) + " (bound " +
               num(1e-10 * std::abs(l0)) + "); matched-value rel err " + num(matched_rel);
    return o;
}

// 3. The perturbed quadruple verifies strongly and reproduces the
//    closed-form interaction matrix.
Outcome criterion_3() {
    const EigenSystem& es = gaussian_eigensystem();
    const Quadruple q = strong_quadruple(es, 0, 1, 2);
    const InteractionMatrix m = interaction_matrix(gaussian_operator(), q);
    const VerificationReport rep = check_system(m, Mode::strong, default_tol(es));

    const double li = es.eigenvalues[0], lj = es.eigenvalues[1], lk = es.eigenvalues[2];
    const double a2 = *q.meta.alpha * *q.meta.alpha;
    InteractionMatrix want{};
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) want[a][b] = a2 * lk;  // cross-pair default
    want[0][0] = want[1][1] = li + a2 * lk;
    want[0][1] = want[1][0] = -li + a2 * lk;
    want[2][2] = want[3][3] = lj + a2 * lk;
    want[2][3] = want[3][2] = -lj + a2 * lk;

    double worst_rel = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            worst_rel = std::max(worst_rel, std::abs(m[a][b] - want[a][b]) / std::abs(want[a][b]));

    Outcome o;
    o.pass = rep.overall_pass && worst_rel <= 1e-10;
    o.detail = std::string(rep.overall_pass ? "strong check passes" : "strong check FAILS") +
               "; worst closed-form rel err " + num(worst_rel) + " over 16 entries (alpha = " +
               num(*q.meta.alpha) + ")";
    return o;
}

// 4. Behavior at the admissibility boundary.
Outcome criterion_4() {
    const EigenSystem& es = gaussian_eigensystem();
    const double amax = alpha_max(es, 0, 1, 2);

    const Quadruple q = strong_quadruple(es, 0, 1, 2, 0.99 * amax);
    const InteractionMatrix m = interaction_matrix(gaussian_operator(), q);
    const double p_phi = m[0][1], p_psi = m[2][3];
    const double smaller = std::min(p_phi, p_psi);
    // alpha -> 0 limit of the binding positive condition.
    const double limit = (p_phi <= p_psi) ? -es.eigenvalues[0] : -es.eigenvalues[1];
    const bool squeezed = smaller > 0.0 && smaller < 0.03 * limit;

    bool rejected = false;
    double reported_bound = 0.0;
    try {
        strong_quadruple(es, 0, 1, 2, 1.01 * amax);
    } catch (const Error& e) {
        rejected = e.kind() == ErrorKind::inadmissible_alpha;
        reported_bound = e.detail();
    }

    Outcome o;
    o.pass = squeezed && rejected;
    o.detail = "binding margin at 0.99*alpha_max: " + num(smaller) + " (limit value " +
               num(limit) + ", squeeze " + num(smaller / limit) + "); 1.01*alpha_max " +
               (rejected ? "rejected, bound " + num(reported_bound) : "NOT rejected");
    return o;
}

// 5. The dense-operator pair force agrees with an independent double-loop
//    oracle for both kernels.
Outcome criterion_5() {
    const Cubature c = build_cylinder(1.0, 1.0, 2, 8, 4);  // 64 nodes
    double worst_rel = 0.0;
    for (const KernelSpec& spec : {gaussian_spec(), coulomb_spec(0.1, 1.2)}) {
        const DiscreteOperator op = assemble(c, spec);
        std::mt19937_64 rng(7);
        for (int trial = 0; trial < 20; ++trial) {
            const auto phi = random_density(rng, c.size());
            const auto psi = random_density(rng, c.size());
            const double got = pair_force(op, phi, psi);
            const double want = reference::pair_force_reference(c, spec, phi, psi);
            worst_rel = std::max(worst_rel, std::abs(got - want) / std::abs(want));
        }
    }
    Outcome o;
    o.pass = worst_rel <= 1e-12;
    o.detail = "worst oracle rel err " + num(worst_rel) +
               " over 20 pairs x 2 kernels at 64 nodes (bound 1.000e-12)";
    return o;
}

// 6. Bitwise self-adjointness of the interaction data.
Outcome criterion_6() {
    const EigenSystem& es = gaussian_eigensystem();
    const Quadruple q = strong_quadruple(es, 0, 1, 2);
    const InteractionMatrix m = interaction_matrix(gaussian_operator(), q);

    bool mirrored = true;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) mirrored = mirrored && (m[a][b] == m[b][a]);

    bool order_free = true;
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 5; ++trial) {
        const auto f = random_density(rng, default_cubature().size());
        const auto g = random_density(rng, default_cubature().size());
        order_free = order_free &&
                     (pair_force(gaussian_operator(), f, g) == pair_force(gaussian_operator(), g, f));
    }

    Outcome o;
    o.pass = mirrored && order_free;
    o.detail = std::string(mirrored ? "16/16 matrix entries mirror bitwise" : "matrix NOT symmetric") +
               "; argument swap bitwise-identical for 5 random pairs: " +
               (order_free ? "yes" : "no");
    return o;
}

// 7. Axisymmetric densities make the posed force rotation-invariant.
Outcome criterion_7() {
    const Cubature& c = default_cubature();
    const KernelSpec spec = coulomb_spec(0.1, 1.2);
    std::mt19937_64 rng(13);
    const auto phi = axisym_project(c, random_density(rng, c.size()));
    const auto psi = axisym_project(c, random_density(rng, c.size()));

    PoseGrid grid;
    grid.r3 = {1.2};
    grid.angle_count = 8;
    const PoseScanResult res = pose_scan(c, spec, phi, psi, grid);

    const double scale = std::max(std::abs(res.min_I), std::abs(res.max_I));
    const double spread = res.max_I - res.min_I;

    Outcome o;
    o.pass = spread <= 1e-12 * scale;
    o.detail = "force spread over 8 ring angles " + num(spread) + " at magnitude " + num(scale) +
               " (relative " + num(scale > 0.0 ? spread / scale : 0.0) + ", bound 1.000e-12)";
    return o;
}

// 8. Two point charges at separation 2 with unit weights: hand value -1/4.
Outcome criterion_8() {
    const Cubature c = build_box(1.0, 1.0, 1.0, 1, 1, 1);
    const DiscreteOperator op = assemble(c, coulomb_spec(0.0, 2.0));
    const double got = pair_force(op, {1.0}, {1.0});
    Outcome o;
    o.pass = got == -0.25;
    o.detail = "pair force " + num(got) + (o.pass ? " == -0.25 exactly" : " != -0.25");
    return o;
}

// 9. The posed evaluation at the canonical separation reproduces the
//    fixed-operator force.
Outcome criterion_9() {
    const Cubature& c = default_cubature();
    const KernelSpec spec = coulomb_spec(0.1, 1.2);
    const DiscreteOperator op = assemble(c, spec);

    std::vector<double> phi(c.size());
    for (std::size_t a = 0; a < c.size(); ++a)
        phi[a] = 1.0 + c.nodes[a].x3 + 0.25 * c.nodes[a].x1;

    PoseGrid grid;
    grid.r3 = {1.2};
    grid.angle_count = 1;  // identity rotation only
    const PoseScanResult res = pose_scan(c, spec, phi, phi, grid);
    const double want = pair_force(op, phi, phi);
    const double rel = std::abs(res.min_I - want) / std::abs(want);

    Outcome o;
    o.pass = rel <= 1e-12;
    o.detail = "posed force " + num(res.min_I) + " vs operator force " + num(want) +
               " (rel err " + num(rel) + ", bound 1.000e-12)";
    return o;
}

// 10. End-to-end CLI determinism: cold runs agree byte for byte.
std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in.good()) return "<unreadable:" + p.string() + ">";
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string strip_generated_at(const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line))
        if (line.find("\"generated_at\"") == std::string::npos) out << line << '\n';
    return out.str();
}

int run_cli_quiet(const std::string& config_path) {
    const std::string cmd =
        std::string(CMPLCHG_CLI_PATH) + " --config " + config_path + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    if (rc == -1 || !WIFEXITED(rc)) return -1;
    return WEXITSTATUS(rc);
}

Outcome criterion_10() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "cmplchgXXXXXX").string();
    std::vector<char> buf(tmpl.begin(), tmpl.end());
    buf.push_back('\0');
    if (mkdtemp(buf.data()) == nullptr) return {false, "cannot create temp directory"};
    const std::filesystem::path base = buf.data();

    json cfg;
    cfg["domain"] = {{"shape", "cylinder"}, {"radius", 1.0}, {"height", 1.0},
                     {"nr", 2},             {"ntheta", 4},   {"nz", 2}};
    cfg["kernel"] = {{"kind", "smooth_gaussian"}, {"sigma", 0.5}, {"epsilon", 0.0}, {"d", 1.2}};
    cfg["synthesis"] = {{"mode", "strong"}, {"i", 0}, {"j", 1}, {"k", 2}};
    cfg["verify"] = {{"pose_scan",
                      {{"r1", {0.0}},
                       {"r2", {0.0}},
                       {"r3", {1.2}},
                       {"axis", {0.0, 0.0, 1.0}},
                       {"angle_count", 2},
                       {"contact_r3", 1.2}}}};

    const auto write_variant = [&](const char* tag) {
        json j = cfg;
        j["output"] = {{"report_path", (base / (std::string("report-") + tag + ".json")).string()},
                       {"export_path", (base / (std::string("quad-") + tag + ".csv")).string()},
                       {"cache_dir", (base / (std::string("cache-") + tag)).string()}};
        const auto path = base / (std::string("config-") + tag + ".json");
        std::ofstream out(path);
        out << j.dump(2) << "\n";
        return path;
    };
    const auto cfg_a = write_variant("a");
    const auto cfg_b = write_variant("b");

    Outcome o;
    const int rc_a = run_cli_quiet(cfg_a.string());
    const int rc_b = run_cli_quiet(cfg_b.string());
    if (rc_a != 0 || rc_b != 0) {
        o.detail = "cold runs exited " + std::to_string(rc_a) + " and " + std::to_string(rc_b);
        std::filesystem::remove_all(base);
        return o;
    }

    const char* cache_files[] = {"domain.bin",    "operator.bin",     "eigensystem.bin",
                                 "quadruple.bin", "verification.bin", "scan.bin"};
    int identical = 0;
    for (const char* f : cache_files)
        if (slurp(base / "cache-a" / f) == slurp(base / "cache-b" / f)) ++identical;

    const std::string report_a = slurp(base / "report-a.json");
    const bool reports_match =
        strip_generated_at(report_a) == strip_generated_at(slurp(base / "report-b.json"));
    const bool csv_match = slurp(base / "quad-a.csv") == slurp(base / "quad-b.csv");

    const int rc_warm = run_cli_quiet(cfg_a.string());
    const bool warm_match =
        rc_warm == 0 &&
        strip_generated_at(slurp(base / "report-a.json")) == strip_generated_at(report_a);

    std::filesystem::remove_all(base);

    o.pass = identical == 6 && reports_match && csv_match && warm_match;
    o.detail = std::to_string(identical) + "/6 cache files byte-identical across cold runs; reports " +
               (reports_match ? "match" : "differ") + " modulo timestamp; export " +
               (csv_match ? "matches" : "differs") + "; warm rerun " +
               (warm_match ? "matches" : "differs");
    return o;
}

Outcome run_criterion(int n) {
    try {
        switch (n) {
            case 1: return criterion_1();
            case 2: return criterion_2();
            case 3: return criterion_3();
            case 4: return criterion_4();
            case 5: return criterion_5();
            case 6: return criterion_6();
            case 7: return criterion_7();
            case 8: return criterion_8();
            case 9: return criterion_9();
            case 10: return criterion_10();
        }
    } catch (const Error& e) {
        return {false, std::string("unexpected error: ") + e.what()};
    } catch (const std::exception& e) {
        return {false, std::string("unexpected exception: ") + e.what()};
    }
    return {false, "unknown criterion"};
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> which;
    if (argc > 1) {
        const int n = std::atoi(argv[1]);
        if (n < 1 || n > 10) {
            std::fprintf(stderr, "usage: %s [criterion 1-10]\n", argv[0]);
            return 2;
        }
        which.push_back(n);
    } else {
        for (int n = 1; n <= 10; ++n) which.push_back(n);
    }

    bool all_pass = true;
    for (int n : which) {
        const Outcome o = run_criterion(n);
        std::printf("criterion %d: %s — %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
