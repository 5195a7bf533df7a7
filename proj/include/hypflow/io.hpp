#pragma once

// Scenario configuration (flat key=value files), series/snapshot persistence,
// run summaries, SVG rendering, and the subcommand entry points behind the
// command-line front end.

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hypflow/diagnostics.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/radial_curve.hpp"

namespace hypflow::io {

struct InitSpec {
    enum class Kind { Example, Circle, OffCircle, Fourier };
    struct Harmonic {
        int k = 0;
        double amp = 0.0;
        double phase = 0.0;
    };
    Kind kind = Kind::Example;
    double radius = 1.0;   // circle / offcircle
    double offset = 0.0;   // offcircle
    double mean = 1.0;     // fourier
    std::vector<Harmonic> harmonics;  // fourier
};

// Parses the single-line init syntax:
//   "paper-example" | "circle r=<v>" | "offcircle r=<v> d=<v>"
//   | "fourier mean=<v> modes=k:amp:phase[,k:amp:phase...]"
InitSpec parse_init(const std::string& text);

struct ScenarioConfig {
    FlowConfig flow;
    InitSpec init;
    std::string init_text = "paper-example";
    std::string out = "out";
    int k_max = 8;
    long series_stride = 1;  // series.csv keeps every series_stride-th row (plus the last)
    bool emit_csv = true;
    bool emit_json = true;
    bool emit_svg = false;
};

// Flat key=value with '#' comments; unknown keys and malformed values are
// hard errors naming the key and line. `origin` labels error messages.
ScenarioConfig parse_config_text(const std::string& text, const std::string& origin);
ScenarioConfig parse_config(const std::string& path);

// Applies one "key=value" override with the same validation as the parser.
void apply_override(ScenarioConfig& config, const std::string& key_value);

RadialCurve build_initial(const InitSpec& init, int n);

void write_series_csv(const diag::DiagnosticsSeries& series, const std::string& path,
                      long stride = 1);
diag::DiagnosticsSeries read_series_csv(const std::string& path);

// curve_<step>.csv (theta,rho at 17 significant digits) plus a sidecar
// curve_<step>.json carrying t, step_count, and the full effective config.
std::string write_snapshot(const FlowState& state, const ScenarioConfig& config,
                           const std::string& dir);

struct Snapshot {
    FlowState state;
    ScenarioConfig config;
};

Snapshot read_snapshot(const std::string& csv_path);

void write_summary_json(const RunOutcome& outcome, const ScenarioConfig& config,
                        const std::string& path);

// Poincare-disk rendering: unit-circle boundary, the curve, and optionally
// the predicted limit circle (dashed). Byte-deterministic for fixed input.
void render_svg(const RadialCurve& curve, const std::string& path,
                std::optional<double> limit_radius = std::nullopt);

void write_effective_config(const ScenarioConfig& config, const std::string& path);

// Subcommand drivers; return process exit codes (run outcomes map to
// 0/2/3/4, usage and I/O failures to 1).
int cmd_run(ScenarioConfig config, const std::string& out_override, std::ostream& log);
int cmd_verify(std::ostream& os);
int cmd_resume(const std::string& snapshot_path, const std::vector<std::string>& overrides,
               const std::string& out_override, std::ostream& log);

}  // namespace hypflow::io
