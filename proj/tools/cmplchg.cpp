#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cmplchg/config.hpp"
#include "cmplchg/errors.hpp"
#include "cmplchg/pipeline.hpp"

namespace {

struct SubSpec {
    const char* name;
    const char* help;
    bool has_mode;
};

constexpr SubSpec kSubcommands[] = {
    {"run", "execute the full pipeline (cubature, assemble, eig, synth, verify, scan)", false},
    {"domain", "build the cubature and cache it", false},
    {"assemble", "assemble the discrete operator (needs a cached domain)", false},
    {"eig", "decompose the operator (needs a cached operator)", false},
    {"synth", "synthesize the quadruple (needs a cached eigensystem)", true},
    {"verify", "check the complementarity conditions (needs a cached quadruple)", true},
    {"scan", "scan the pose grid (needs a cached quadruple)", false},
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"complementary charge distributions: build, decompose, synthesize, verify"};
    app.get_formatter()->column_width(26);

    std::string config_path;
    std::string stage_flag;
    bool force = false;
    bool quiet = false;
    app.add_option("--config", config_path, "path to the JSON run configuration")
        ->required();
    app.add_option("--stage", stage_flag,
                   "stage to run: domain|assemble|eig|synth|verify|scan|run "
                   "(alternative to the subcommand form)");
    app.add_flag("--force", force, "recompute, ignoring cached results");
    app.add_flag("--quiet", quiet, "suppress progress notes on stderr");

    std::string mode_flag;
    for (const auto& s : kSubcommands) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        if (s.has_mode)
            sub->add_option("--mode", mode_flag, "override synthesis.mode (weak|strong)");
    }
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cmplchg::kExitConfigError;
    }

    const auto chosen = app.get_subcommands();
    if (!chosen.empty() && !stage_flag.empty()) {
        std::cerr << "error: give either --stage or a subcommand, not both" << std::endl;
        return cmplchg::kExitConfigError;
    }

    try {
        const std::string stage_word =
            !chosen.empty() ? chosen.front()->get_name()
                            : (!stage_flag.empty() ? stage_flag : std::string("run"));
        const cmplchg::Stage stage = cmplchg::parse_stage(stage_word);

        cmplchg::StageOptions opt;
        opt.force = force;
        opt.quiet = quiet;
        if (!mode_flag.empty()) opt.mode_override = mode_flag;

        cmplchg::RunConfig config = cmplchg::load_config(config_path);
        return cmplchg::run_stage(std::move(config), stage, opt);
    } catch (const cmplchg::Error& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return cmplchg::kExitConfigError;
    }
}
