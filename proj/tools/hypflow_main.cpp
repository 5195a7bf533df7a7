#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypflow/geometry.hpp"
#include "hypflow/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Curvature-flow simulator for convex radial graphs in the hyperbolic plane"};
    app.require_subcommand(1);

    std::string config_path, out_dir, snapshot_path, render_out = "curve.svg";
    std::vector<std::string> overrides;

    CLI::App* run_cmd = app.add_subcommand("run", "Integrate a flow scenario and write artifacts");
    run_cmd->add_option("--config", config_path, "Scenario config file")->required();
    run_cmd->add_option("--out", out_dir, "Output directory (overrides the config's out=)");
    run_cmd->add_option("--override", overrides, "key=value override (repeatable)");

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "Run the built-in quick verification suite");

    CLI::App* resume_cmd =
        app.add_subcommand("resume", "Continue a run from a curve_<step>.csv snapshot");
    resume_cmd->add_option("--snapshot", snapshot_path, "Snapshot CSV written by run")->required();
    resume_cmd->add_option("--out", out_dir, "Output directory (overrides the snapshot's out=)");
    resume_cmd->add_option("--override", overrides, "key=value override (repeatable)");

    CLI::App* render_cmd =
        app.add_subcommand("render", "Render a scenario's initial curve to SVG");
    render_cmd->add_option("--config", config_path, "Scenario config file")->required();
    render_cmd->add_option("--out", render_out, "Output SVG file path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (run_cmd->parsed()) {
            hypflow::io::ScenarioConfig cfg = hypflow::io::parse_config(config_path);
            for (const std::string& kv : overrides) hypflow::io::apply_override(cfg, kv);
            return hypflow::io::cmd_run(cfg, out_dir, std::cout);
        }
        if (verify_cmd->parsed()) return hypflow::io::cmd_verify(std::cout);
        if (resume_cmd->parsed())
            return hypflow::io::cmd_resume(snapshot_path, overrides, out_dir, std::cout);
        if (render_cmd->parsed()) {
            const hypflow::io::ScenarioConfig cfg = hypflow::io::parse_config(config_path);
            const hypflow::RadialCurve curve =
                hypflow::io::build_initial(cfg.init, cfg.flow.n);
            const double conserved = cfg.flow.mode == hypflow::Mode::AreaPreserving
                                         ? hypflow::area(curve)
                                         : hypflow::length(curve);
            hypflow::io::render_svg(curve, render_out,
                                    hypflow::diag::limit_radius(cfg.flow.mode, conserved));
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
