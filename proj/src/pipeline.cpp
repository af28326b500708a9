#include "cmplchg/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <utility>

#include "cmplchg/cache.hpp"
#include "cmplchg/csv_export.hpp"
#include "cmplchg/errors.hpp"
#include "cmplchg/report.hpp"
#include "cmplchg/spectral.hpp"
#include "cmplchg/synthesis.hpp"
#include "cmplchg/verify.hpp"

namespace cmplchg {

namespace {

using nlohmann::json;

// Definiteness certificate threshold: max eigenvalue < -tol * |min eigenvalue|.
constexpr double kDefinitenessTol = 1e-12;

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::numerical_failure:
        case ErrorKind::singular_kernel:
            return kExitNumericalFailure;
        case ErrorKind::cache_missing:
            return kExitCacheMissing;
        default:
            return kExitConfigError;
    }
}

json shape_meta_json(const ShapeMeta& m) {
    if (m.shape == "cylinder")
        return {{"shape", "cylinder"}, {"radius", m.radius}, {"height", m.height},
                {"nr", m.nr},          {"ntheta", m.ntheta}, {"nz", m.nz}};
    return {{"shape", "box"}, {"lx", m.lx}, {"ly", m.ly},
            {"lz", m.lz},     {"nx", m.nx}, {"ny", m.ny},
            {"nz", m.nz}};
}

Pose pose_from_json(const json& j) {
    Pose p;
    p.r = Vec3{j.at("r")[0].get<double>(), j.at("r")[1].get<double>(),
               j.at("r")[2].get<double>()};
    p.axis = Vec3{j.at("axis")[0].get<double>(), j.at("axis")[1].get<double>(),
                  j.at("axis")[2].get<double>()};
    p.angle = j.at("angle").get<double>();
    return p;
}

void ensure_parent_dir(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
}

// Orchestrates one stage against the cache directory. Artifacts are memoized
// so `run` builds each one exactly once; `allow_compute` distinguishes the
// stage's own artifact (recomputable) from prerequisites (cache-only).
class Pipeline {
public:
    Pipeline(RunConfig cfg, StageOptions opt) : cfg_(std::move(cfg)), opt_(opt) {
        if (opt_.mode_override) {
            if (*opt_.mode_override != "weak" && *opt_.mode_override != "strong")
                throw Error(ErrorKind::config_error,
                            "--mode must be \"weak\" or \"strong\"");
            cfg_.synthesis.mode = *opt_.mode_override;
            if (cfg_.synthesis.mode == "strong" &&
                (cfg_.synthesis.k == cfg_.synthesis.i || cfg_.synthesis.k == cfg_.synthesis.j))
                throw Error(ErrorKind::invalid_pair,
                            "synthesis.k must differ from i and j in strong mode");
        }
        cache_dir_ = cfg_.output.cache_dir;
        if (const char* env = std::getenv("CMPLCHG_CACHE_DIR"); env && *env) cache_dir_ = env;

        dj_ = domain_json(cfg_.domain);
        kj_ = kernel_json(cfg_.kernel);
        sj_ = synthesis_json(cfg_.synthesis);
        fp_domain_ = fingerprint_of(dj_);
        fp_operator_ = fingerprint_of(json{{"domain", dj_}, {"kernel", kj_}});
        fp_quadruple_ = fingerprint_of(json{{"domain", dj_}, {"kernel", kj_}, {"synthesis", sj_}});
        const json tol_j = cfg_.verify.tol ? json(*cfg_.verify.tol) : json(nullptr);
        fp_verify_ = fingerprint_of(
            json{{"domain", dj_}, {"kernel", kj_}, {"synthesis", sj_}, {"tol", tol_j}});
        if (cfg_.verify.pose_scan) {
            const auto& p = *cfg_.verify.pose_scan;
            fp_scan_ = fingerprint_of(json{{"domain", dj_},
                                           {"kernel", kj_},
                                           {"synthesis", sj_},
                                           {"pose_scan",
                                            {{"r1", p.r1},
                                             {"r2", p.r2},
                                             {"r3", p.r3},
                                             {"axis", p.axis},
                                             {"angle_count", p.angle_count},
                                             {"contact_r3", p.contact_r3}}}});
        }
    }

    int execute(Stage stage) {
        chain_compute_ = (stage == Stage::run);
        std::filesystem::create_directories(cache_dir_);
        CacheLock lock(cache_dir_);

        switch (stage) {
            case Stage::domain: {
                ensure_domain(true);
                json rep = base_report("domain");
                rep["domain"] = dj_;
                rep["n"] = cub_->size();
                double total = 0.0;
                for (double w : cub_->weights) total += w;
                rep["total_weight"] = total;
                emit_report(rep);
                return kExitPass;
            }
            case Stage::assemble: {
                ensure_operator(true);
                json rep = base_report("assemble");
                rep["domain"] = dj_;
                rep["kernel"] = kj_;
                rep["n"] = op_->size();
                rep["asymmetry_norm"] = op_->asymmetry_norm;
                emit_report(rep);
                return kExitPass;
            }
            case Stage::eig: {
                ensure_eigensystem(true);
                json rep = base_report("eig");
                rep["n"] = static_cast<int>(es_->eigenvalues.size());
                rep["eigenvalues"] = eigenvalue_summary_json(*es_);
                rep["definiteness"] =
                    definiteness_json(check_definiteness(*es_, kDefinitenessTol), kDefinitenessTol);
                emit_report(rep);
                return kExitPass;
            }
            case Stage::synth: {
                ensure_quadruple(true);
                maybe_export();
                json rep = base_report("synth");
                rep["n"] = cub_->size();
                rep["quadruple"] = quadruple_meta_json(quad_->meta);
                emit_report(rep);
                return kExitPass;
            }
            case Stage::verify: {
                const VerificationReport v = ensure_verification(true);
                json rep = base_report("verify");
                rep["n"] = cub_->size();
                rep["verification"] = verification_json(v);
                emit_report(rep);
                return v.overall_pass ? kExitPass : kExitVerificationFailure;
            }
            case Stage::scan: {
                const PoseScanResult r = ensure_scan(true);
                json rep = base_report("scan");
                rep["n"] = cub_->size();
                rep["pose_scan"] = pose_scan_json(r);
                emit_report(rep);
                return kExitPass;
            }
            case Stage::run: {
                ensure_domain(true);
                ensure_operator(true);
                ensure_eigensystem(true);
                ensure_quadruple(true);
                maybe_export();
                const VerificationReport v = ensure_verification(true);
                json rep = base_report("run");
                rep["domain"] = dj_;
                rep["kernel"] = kj_;
                rep["n"] = cub_->size();
                rep["asymmetry_norm"] = op_->asymmetry_norm;
                rep["eigenvalues"] = eigenvalue_summary_json(*es_);
                rep["definiteness"] =
                    definiteness_json(check_definiteness(*es_, kDefinitenessTol), kDefinitenessTol);
                rep["quadruple"] = quadruple_meta_json(quad_->meta);
                rep["verification"] = verification_json(v);
                if (cfg_.verify.pose_scan) rep["pose_scan"] = pose_scan_json(ensure_scan(true));
                rep["overall_pass"] = v.overall_pass;
                emit_report(rep);
                return v.overall_pass ? kExitPass : kExitVerificationFailure;
            }
        }
        throw Error(ErrorKind::config_error, "unknown stage");
    }

private:
    std::string path_of(const char* file) const { return cache_dir_ + "/" + file; }

    void note(const std::string& msg) const {
        if (!opt_.quiet) std::cerr << "[cmplchg] " << msg << std::endl;
    }

    json base_report(const char* stage) const {
        return {{"generated_at", timestamp_utc_now()}, {"stage", stage}};
    }

    void emit_report(const json& rep) const {
        ensure_parent_dir(cfg_.output.report_path);
        write_json_file(cfg_.output.report_path, rep);
        note(std::string("report written to ") + cfg_.output.report_path);
    }

    void maybe_export() {
        if (!cfg_.output.export_path) return;
        ensure_parent_dir(*cfg_.output.export_path);
        export_quadruple(*quad_, *cub_, *cfg_.output.export_path);
        note("quadruple exported to " + *cfg_.output.export_path);
    }

    [[noreturn]] void missing(const char* what, const char* stage) const {
        throw Error(ErrorKind::cache_missing,
                    std::string("no cached ") + what +
                        " matches the active config; run the '" + stage + "' stage first");
    }

    // --- domain -----------------------------------------------------------
    void ensure_domain(bool allow_compute) {
        if (cub_) return;
        const std::string path = path_of("domain.bin");
        if (!(opt_.force && allow_compute)) {
            if (auto data = read_cache_file(path, fp_domain_, "cubature")) {
                note("domain: cache hit (domain.bin)");
                const auto n = static_cast<int>(data->header.n);
                if (data->payload.size() != static_cast<std::size_t>(n) * 5)
                    throw Error(ErrorKind::io_error, "domain.bin payload size mismatch");
                Cubature c;
                c.nodes.resize(n);
                c.weights.resize(n);
                std::vector<int> rings(n);
                bool any_ring = false;
                for (int a = 0; a < n; ++a) {
                    const double* row = data->payload.data() + 5 * a;
                    c.nodes[a] = Vec3{row[0], row[1], row[2]};
                    c.weights[a] = row[3];
                    rings[a] = static_cast<int>(row[4]);
                    any_ring = any_ring || rings[a] >= 0;
                }
                if (any_ring) c.ring_ids = std::move(rings);
                c.meta = meta_from_json(data->header.extra);
                cub_ = std::move(c);
                return;
            }
        }
        if (!allow_compute && !chain_compute_) missing("cubature", "domain");
        note("domain: computing");
        cub_ = build_domain(cfg_.domain);
        const int n = cub_->size();
        std::vector<double> payload(static_cast<std::size_t>(n) * 5);
        for (int a = 0; a < n; ++a) {
            double* row = payload.data() + 5 * a;
            row[0] = cub_->nodes[a].x1;
            row[1] = cub_->nodes[a].x2;
            row[2] = cub_->nodes[a].x3;
            row[3] = cub_->weights[a];
            row[4] = cub_->ring_ids.empty() ? -1.0 : static_cast<double>(cub_->ring_ids[a]);
        }
        CacheHeader h;
        h.fingerprint = fp_domain_;
        h.kind = "cubature";
        h.n = static_cast<std::uint64_t>(n);
        h.layout = "node-x1-x2-x3-w-ring";
        h.extra = shape_meta_json(cub_->meta);
        write_cache_file(path, h, payload);
        note("domain: cached (domain.bin, n=" + std::to_string(n) + ")");
    }

    static ShapeMeta meta_from_json(const json& j) {
        ShapeMeta m;
        m.shape = j.at("shape").get<std::string>();
        if (m.shape == "cylinder") {
            m.radius = j.at("radius").get<double>();
            m.height = j.at("height").get<double>();
            m.nr = j.at("nr").get<int>();
            m.ntheta = j.at("ntheta").get<int>();
        } else {
            m.lx = j.at("lx").get<double>();
            m.ly = j.at("ly").get<double>();
            m.lz = j.at("lz").get<double>();
            m.nx = j.at("nx").get<int>();
            m.ny = j.at("ny").get<int>();
        }
        m.nz = j.at("nz").get<int>();
        return m;
    }

    // --- operator ----------------------------------------------------------
    void ensure_operator(bool allow_compute) {
        if (op_) return;
        const std::string path = path_of("operator.bin");
        if (!(opt_.force && allow_compute)) {
            if (auto data = read_cache_file(path, fp_operator_, "operator")) {
                ensure_domain(false);
                note("assemble: cache hit (operator.bin)");
                const auto n = static_cast<int>(data->header.n);
                if (n != cub_->size() ||
                    data->payload.size() != static_cast<std::size_t>(n) * n)
                    throw Error(ErrorKind::io_error, "operator.bin payload size mismatch");
                DiscreteOperator op;
                op.K = Matrix(n);
                op.K.data() = std::move(data->payload);
                op.weights = cub_->weights;
                op.asymmetry_norm = data->header.extra.at("asymmetry_norm").get<double>();
                op.spec = cfg_.kernel;
                op.cubature_meta = cub_->meta;
                op_ = std::move(op);
                return;
            }
        }
        if (!allow_compute && !chain_compute_) missing("operator", "assemble");
        ensure_domain(chain_compute_);
        note("assemble: computing (n=" + std::to_string(cub_->size()) + ")");
        op_ = assemble(*cub_, cfg_.kernel);
        CacheHeader h;
        h.fingerprint = fp_operator_;
        h.kind = "operator";
        h.n = static_cast<std::uint64_t>(op_->size());
        h.layout = "dense-row-major";
        h.extra = {{"asymmetry_norm", op_->asymmetry_norm}};
        write_cache_file(path, h, op_->K.data());
        note("assemble: cached (operator.bin)");
    }

    // --- eigensystem --------------------------------------------------------
    void ensure_eigensystem(bool allow_compute) {
        if (es_) return;
        const std::string path = path_of("eigensystem.bin");
        if (!(opt_.force && allow_compute)) {
            if (auto data = read_cache_file(path, fp_operator_, "eigensystem")) {
                note("eig: cache hit (eigensystem.bin)");
                const auto n = static_cast<std::size_t>(data->header.n);
                if (data->payload.size() != n + n * n)
                    throw Error(ErrorKind::io_error, "eigensystem.bin payload size mismatch");
                EigenSystem es;
                es.eigenvalues.assign(data->payload.begin(), data->payload.begin() + n);
                es.eigenvectors.resize(n);
                for (std::size_t i = 0; i < n; ++i)
                    es.eigenvectors[i].assign(data->payload.begin() + n + i * n,
                                              data->payload.begin() + n + (i + 1) * n);
                es.residual_norm = data->header.extra.at("residual_norm").get<double>();
                es_ = std::move(es);
                return;
            }
        }
        if (!allow_compute && !chain_compute_) missing("eigensystem", "eig");
        ensure_operator(chain_compute_);
        note("eig: computing (n=" + std::to_string(op_->size()) + ")");
        es_ = decompose(*op_);
        const std::size_t n = es_->eigenvalues.size();
        std::vector<double> payload;
        payload.reserve(n + n * n);
        payload.insert(payload.end(), es_->eigenvalues.begin(), es_->eigenvalues.end());
        for (const auto& v : es_->eigenvectors) payload.insert(payload.end(), v.begin(), v.end());
        CacheHeader h;
        h.fingerprint = fp_operator_;
        h.kind = "eigensystem";
        h.n = static_cast<std::uint64_t>(n);
        h.layout = "eigenvalues-then-eigenvector-columns";
        h.extra = {{"residual_norm", es_->residual_norm}};
        write_cache_file(path, h, payload);
        note("eig: cached (eigensystem.bin)");
    }

    // --- quadruple ----------------------------------------------------------
    void ensure_quadruple(bool allow_compute) {
        if (quad_) return;
        const std::string path = path_of("quadruple.bin");
        if (!(opt_.force && allow_compute)) {
            if (auto data = read_cache_file(path, fp_quadruple_, "quadruple")) {
                ensure_domain(false);
                note("synth: cache hit (quadruple.bin)");
                const auto n = static_cast<std::size_t>(data->header.n);
                if (data->payload.size() != 4 * n)
                    throw Error(ErrorKind::io_error, "quadruple.bin payload size mismatch");
                Quadruple q;
                const double* p = data->payload.data();
                q.phi.assign(p, p + n);
                q.Phi.assign(p + n, p + 2 * n);
                q.psi.assign(p + 2 * n, p + 3 * n);
                q.Psi.assign(p + 3 * n, p + 4 * n);
                q.meta = meta_from_extra(data->header.extra);
                quad_ = std::move(q);
                return;
            }
        }
        if (!allow_compute && !chain_compute_) missing("quadruple", "synth");
        ensure_domain(chain_compute_);
        ensure_eigensystem(chain_compute_);
        note("synth: computing (" + cfg_.synthesis.mode + " mode)");
        if (cfg_.synthesis.mode == "weak")
            quad_ = weak_quadruple(*es_, cfg_.synthesis.i, cfg_.synthesis.j);
        else
            quad_ = strong_quadruple(*es_, cfg_.synthesis.i, cfg_.synthesis.j, cfg_.synthesis.k,
                                     cfg_.synthesis.alpha);
        const std::size_t n = quad_->phi.size();
        std::vector<double> payload;
        payload.reserve(4 * n);
        for (const auto* v : {&quad_->phi, &quad_->Phi, &quad_->psi, &quad_->Psi})
            payload.insert(payload.end(), v->begin(), v->end());
        CacheHeader h;
        h.fingerprint = fp_quadruple_;
        h.kind = "quadruple";
        h.n = static_cast<std::uint64_t>(n);
        h.layout = "phi-Phi-psi-Psi";
        h.extra = quadruple_meta_json(quad_->meta);
        write_cache_file(path, h, payload);
        note("synth: cached (quadruple.bin)");
    }

    static QuadrupleMeta meta_from_extra(const json& j) {
        QuadrupleMeta m;
        m.mode = j.at("mode").get<std::string>();
        m.i = j.at("i").get<int>();
        m.j = j.at("j").get<int>();
        m.lambda_i = j.at("lambda_i").get<double>();
        m.lambda_j = j.at("lambda_j").get<double>();
        if (j.contains("k")) m.k = j.at("k").get<int>();
        if (j.contains("alpha")) m.alpha = j.at("alpha").get<double>();
        if (j.contains("lambda_k")) m.lambda_k = j.at("lambda_k").get<double>();
        return m;
    }

    // --- verification -------------------------------------------------------
    VerificationReport ensure_verification(bool allow_compute) {
        const std::string path = path_of("verification.bin");
        const Mode mode = parse_mode(cfg_.synthesis.mode);
        if (!(opt_.force && allow_compute)) {
            if (auto data = read_cache_file(path, fp_verify_, "verification")) {
                ensure_domain(false);
                note("verify: cache hit (verification.bin)");
                if (data->payload.size() != 16)
                    throw Error(ErrorKind::io_error, "verification.bin payload size mismatch");
                InteractionMatrix m;
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) m[a][b] = data->payload[4 * a + b];
                const double tol = data->header.extra.at("tol").get<double>();
                return check_system(m, mode, tol);
            }
        }
        ensure_domain(chain_compute_);
        ensure_operator(chain_compute_);
        ensure_eigensystem(chain_compute_);
        ensure_quadruple(chain_compute_);
        note("verify: computing (" + cfg_.synthesis.mode + " mode)");
        const InteractionMatrix m = interaction_matrix(*op_, *quad_);
        const double tol = cfg_.verify.tol ? *cfg_.verify.tol : default_tol(*es_);
        const VerificationReport v = check_system(m, mode, tol);
        std::vector<double> payload(16);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) payload[4 * a + b] = m[a][b];
        CacheHeader h;
        h.fingerprint = fp_verify_;
        h.kind = "verification";
        h.n = static_cast<std::uint64_t>(cub_->size());
        h.layout = "interaction-matrix-4x4";
        h.extra = {{"mode", to_string(v.mode)},
                   {"tol", v.tol},
                   {"overall_pass", v.overall_pass},
                   {"margin", v.margin}};
        write_cache_file(path, h, payload);
        note("verify: cached (verification.bin)");
        return v;
    }

    // --- pose scan -----------------------------------------------------------
    PoseScanResult ensure_scan(bool allow_compute) {
        if (!cfg_.verify.pose_scan)
            throw Error(ErrorKind::config_error,
                        "verify.pose_scan is not configured; the scan stage needs it");
        const auto& pc = *cfg_.verify.pose_scan;
        PoseGrid grid;
        grid.r1 = pc.r1;
        grid.r2 = pc.r2;
        grid.r3 = pc.r3;
        grid.axis = Vec3{pc.axis[0], pc.axis[1], pc.axis[2]};
        grid.angle_count = pc.angle_count;
        grid.contact_r3 = pc.contact_r3;

        const std::string path = path_of("scan.bin");
        if (!(opt_.force && allow_compute)) {
            if (auto data = read_cache_file(path, fp_scan_, "scan")) {
                ensure_domain(false);
                note("scan: cache hit (scan.bin)");
                if (data->payload.size() != 2)
                    throw Error(ErrorKind::io_error, "scan.bin payload size mismatch");
                PoseScanResult r;
                r.grid = grid;
                r.min_I = data->payload[0];
                r.max_I = data->payload[1];
                r.argmin_pose = pose_from_json(data->header.extra.at("argmin_pose"));
                r.argmax_pose = pose_from_json(data->header.extra.at("argmax_pose"));
                r.contact_all_negative =
                    data->header.extra.at("contact_all_negative").get<bool>();
                r.attracting_pose_exists =
                    data->header.extra.at("attracting_pose_exists").get<bool>();
                return r;
            }
        }
        ensure_domain(chain_compute_);
        ensure_quadruple(chain_compute_);
        note("scan: computing (" +
             std::to_string(grid.r1.size() * grid.r2.size() * grid.r3.size() *
                            static_cast<std::size_t>(grid.angle_count)) +
             " poses)");
        const PoseScanResult r = pose_scan(*cub_, cfg_.kernel, quad_->phi, quad_->Phi, grid);
        CacheHeader h;
        h.fingerprint = fp_scan_;
        h.kind = "scan";
        h.n = static_cast<std::uint64_t>(cub_->size());
        h.layout = "min-max";
        h.extra = {{"argmin_pose", pose_json(r.argmin_pose)},
                   {"argmax_pose", pose_json(r.argmax_pose)},
                   {"contact_all_negative", r.contact_all_negative},
                   {"attracting_pose_exists", r.attracting_pose_exists}};
        write_cache_file(path, h, {r.min_I, r.max_I});
        note("scan: cached (scan.bin)");
        return r;
    }

    RunConfig cfg_;
    StageOptions opt_;
    std::string cache_dir_;
    bool chain_compute_ = false;
    json dj_, kj_, sj_;
    std::string fp_domain_, fp_operator_, fp_quadruple_, fp_verify_, fp_scan_;
    std::optional<Cubature> cub_;
    std::optional<DiscreteOperator> op_;
    std::optional<EigenSystem> es_;
    std::optional<Quadruple> quad_;
};

}  // namespace

Stage parse_stage(const std::string& name) {
    if (name == "domain") return Stage::domain;
    if (name == "assemble") return Stage::assemble;
    if (name == "eig") return Stage::eig;
    if (name == "synth") return Stage::synth;
    if (name == "verify") return Stage::verify;
    if (name == "scan") return Stage::scan;
    if (name == "run") return Stage::run;
    throw Error(ErrorKind::config_error, "unknown stage \"" + name + "\"");
}

int run_stage(RunConfig config, Stage stage, const StageOptions& opt) {
    try {
        Pipeline p(std::move(config), opt);
        return p.execute(stage);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return kExitConfigError;
    }
}

}  // namespace cmplchg
