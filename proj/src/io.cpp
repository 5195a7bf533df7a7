#include "hypflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hypflow/geometry.hpp"
#include "hypflow/hyperbolic.hpp"
#include "hypflow/oracle.hpp"
#include "hypflow/verification.hpp"

namespace hypflow::io {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream ss(s);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t idx = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &idx);
    } catch (const std::exception&) {
        throw std::runtime_error(key + ": invalid number '" + value + "'");
    }
    if (idx != value.size()) throw std::runtime_error(key + ": invalid number '" + value + "'");
    return v;
}

long parse_long(const std::string& key, const std::string& value) {
    std::size_t idx = 0;
    long v = 0;
    try {
        v = std::stol(value, &idx);
    } catch (const std::exception&) {
        throw std::runtime_error(key + ": invalid integer '" + value + "'");
    }
    if (idx != value.size()) throw std::runtime_error(key + ": invalid integer '" + value + "'");
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw std::runtime_error(key + ": expected 'true' or 'false', got '" + value + "'");
}

kernels::Exec parse_exec(const std::string& value) {
    if (value == "serial") return kernels::Exec::Serial;
    if (value == "parallel") return kernels::Exec::Parallel;
    throw std::runtime_error("exec: expected 'serial' or 'parallel', got '" + value + "'");
}

const char* exec_name(kernels::Exec e) {
    return e == kernels::Exec::Serial ? "serial" : "parallel";
}

// key=value pairs inside an init token list, e.g. "r=1.2".
double named_value(const std::vector<std::string>& tokens, const std::string& name) {
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto kv = split(tokens[i], '=');
        if (kv.size() == 2 && kv[0] == name) return parse_double("init " + name, kv[1]);
    }
    throw std::runtime_error("init: missing required field '" + name + "='");
}

void assign_key(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "alpha") {
        cfg.flow.alpha = parse_double(key, value);
        if (!(cfg.flow.alpha < 0.0)) throw std::runtime_error("alpha must be negative");
    } else if (key == "mode") {
        cfg.flow.mode = mode_from_string(value);
    } else if (key == "n") {
        const long n = parse_long(key, value);
        if (n < 16 || n > (1L << 24) || !spectral::is_power_of_two(static_cast<std::size_t>(n)))
            throw std::runtime_error("n must be a power of two >= 16");
        cfg.flow.n = static_cast<int>(n);
    } else if (key == "cfl_safety") {
        cfg.flow.cfl_safety = parse_double(key, value);
    } else if (key == "t_end") {
        cfg.flow.t_end = parse_double(key, value);
    } else if (key == "blowup_kappa") {
        cfg.flow.blowup_kappa = parse_double(key, value);
    } else if (key == "convexity_floor") {
        cfg.flow.convexity_floor = parse_double(key, value);
    } else if (key == "convergence_deficit") {
        cfg.flow.convergence_deficit = parse_double(key, value);
    } else if (key == "recenter_trigger") {
        cfg.flow.recenter_trigger = parse_double(key, value);
    } else if (key == "snapshot_interval") {
        cfg.flow.snapshot_interval = parse_double(key, value);
    } else if (key == "exec") {
        cfg.flow.exec = parse_exec(value);
    } else if (key == "init") {
        cfg.init = parse_init(value);
        cfg.init_text = value;
    } else if (key == "out") {
        if (value.empty()) throw std::runtime_error("out: directory must not be empty");
        cfg.out = value;
    } else if (key == "k_max") {
        const long k = parse_long(key, value);
        if (k < 0) throw std::runtime_error("k_max must be nonnegative");
        cfg.k_max = static_cast<int>(k);
    } else if (key == "series_stride") {
        cfg.series_stride = parse_long(key, value);
        if (cfg.series_stride < 1) throw std::runtime_error("series_stride must be >= 1");
    } else if (key == "emit_csv") {
        cfg.emit_csv = parse_bool(key, value);
    } else if (key == "emit_json") {
        cfg.emit_json = parse_bool(key, value);
    } else if (key == "emit_svg") {
        cfg.emit_svg = parse_bool(key, value);
    } else {
        throw std::runtime_error("unknown key '" + key + "'");
    }
}

void validate_scenario(const ScenarioConfig& cfg) {
    cfg.flow.validate();
    if (cfg.k_max >= cfg.flow.n / 2)
        throw std::runtime_error("k_max must be smaller than n/2");
}

}  // namespace

InitSpec parse_init(const std::string& text) {
    const std::vector<std::string> tokens = split_ws(text);
    if (tokens.empty()) throw std::runtime_error("init: empty specification");
    InitSpec spec;
    if (tokens[0] == "paper-example") {
        if (tokens.size() != 1)
            throw std::runtime_error("init: 'paper-example' takes no parameters");
        spec.kind = InitSpec::Kind::Example;
    } else if (tokens[0] == "circle") {
        spec.kind = InitSpec::Kind::Circle;
        spec.radius = named_value(tokens, "r");
        if (!(spec.radius > 0.0)) throw std::runtime_error("init: circle radius must be positive");
    } else if (tokens[0] == "offcircle") {
        spec.kind = InitSpec::Kind::OffCircle;
        spec.radius = named_value(tokens, "r");
        spec.offset = named_value(tokens, "d");
        if (!(spec.radius > 0.0)) throw std::runtime_error("init: circle radius must be positive");
        if (spec.offset < 0.0 || spec.offset >= spec.radius)
            throw std::runtime_error("init: offset must lie in [0, radius)");
    } else if (tokens[0] == "fourier") {
        spec.kind = InitSpec::Kind::Fourier;
        spec.mean = named_value(tokens, "mean");
        if (!(spec.mean > 0.0)) throw std::runtime_error("init: mean radius must be positive");
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            const auto kv = split(tokens[i], '=');
            if (kv.size() != 2 || (kv[0] != "mean" && kv[0] != "modes"))
                throw std::runtime_error("init: unexpected token '" + tokens[i] + "'");
            if (kv[0] != "modes") continue;
            for (const std::string& entry : split(kv[1], ',')) {
                const auto parts = split(entry, ':');
                if (parts.size() != 3)
                    throw std::runtime_error("init: mode entry '" + entry +
                                             "' must be k:amp:phase");
                InitSpec::Harmonic h;
                h.k = static_cast<int>(parse_long("init mode index", parts[0]));
                if (h.k < 1) throw std::runtime_error("init: mode index must be >= 1");
                h.amp = parse_double("init mode amplitude", parts[1]);
                h.phase = parse_double("init mode phase", parts[2]);
                spec.harmonics.push_back(h);
            }
        }
    } else {
        throw std::runtime_error("init: unknown kind '" + tokens[0] + "'");
    }
    return spec;
}

ScenarioConfig parse_config_text(const std::string& text, const std::string& origin) {
    ScenarioConfig cfg;
    std::istringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const auto where = [&] { return origin + ":" + std::to_string(line_no) + ": "; };
        if (eq == std::string::npos)
            throw std::runtime_error(where() + "expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            assign_key(cfg, key, value);
        } catch (const std::exception& e) {
            throw std::runtime_error(where() + e.what());
        }
    }
    try {
        validate_scenario(cfg);
    } catch (const std::exception& e) {
        throw std::runtime_error(origin + ": " + e.what());
    }
    return cfg;
}

ScenarioConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

void apply_override(ScenarioConfig& cfg, const std::string& key_value) {
    const auto eq = key_value.find('=');
    if (eq == std::string::npos)
        throw std::runtime_error("override: expected key=value, got '" + key_value + "'");
    const std::string key = trim(key_value.substr(0, eq));
    const std::string value = trim(key_value.substr(eq + 1));
    try {
        assign_key(cfg, key, value);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("override: ") + e.what());
    }
}

RadialCurve build_initial(const InitSpec& init, int n) {
    std::vector<double> rho(static_cast<std::size_t>(n));
    switch (init.kind) {
        case InitSpec::Kind::Example:
            for (int j = 0; j < n; ++j)
                rho[static_cast<std::size_t>(j)] =
                    2.0 + std::cos(two_pi * static_cast<double>(j) / static_cast<double>(n));
            break;
        case InitSpec::Kind::Circle:
            for (int j = 0; j < n; ++j) rho[static_cast<std::size_t>(j)] = init.radius;
            break;
        case InitSpec::Kind::OffCircle:
            return oracle::circle_radial_function({init.radius, init.offset}, n);
        case InitSpec::Kind::Fourier:
            for (int j = 0; j < n; ++j) {
                const double theta = two_pi * static_cast<double>(j) / static_cast<double>(n);
                double r = init.mean;
                for (const auto& h : init.harmonics)
                    r += h.amp * std::cos(static_cast<double>(h.k) * theta + h.phase);
                rho[static_cast<std::size_t>(j)] = r;
            }
            break;
    }
    return RadialCurve::from_samples(std::move(rho));
}

void write_series_csv(const diag::DiagnosticsSeries& series, const std::string& path, long stride) {
    if (stride < 1) throw std::invalid_argument("write_series_csv: stride must be >= 1");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "t,L,A,Delta,kappa_min,kappa_max,W_max,phi,rho_min,rho_max,cheb_gap,gb_residual,"
           "v_min,eta_measure";
    for (int k = 0; k <= series.k_max; ++k) out << ",mode_" << k;
    out << "\n";
    const auto emit = [&](const diag::DiagnosticsRow& r) {
        out << fmt17(r.t) << ',' << fmt17(r.length) << ',' << fmt17(r.area) << ','
            << fmt17(r.deficit) << ',' << fmt17(r.kappa_min) << ',' << fmt17(r.kappa_max) << ','
            << fmt17(r.w_max) << ',' << fmt17(r.phi) << ',' << fmt17(r.rho_min) << ','
            << fmt17(r.rho_max) << ',' << fmt17(r.cheb_gap) << ',' << fmt17(r.gb_residual) << ','
            << fmt17(r.v_min) << ',' << fmt17(r.eta_measure);
        for (double m : r.modes) out << ',' << fmt17(m);
        out << "\n";
    };
    const std::size_t count = series.rows.size();
    std::size_t last_emitted = count;  // sentinel: nothing yet
    for (std::size_t i = 0; i < count; i += static_cast<std::size_t>(stride)) {
        emit(series.rows[i]);
        last_emitted = i;
    }
    if (count > 0 && last_emitted != count - 1) emit(series.rows[count - 1]);
}

diag::DiagnosticsSeries read_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error(path + ": empty file");
    const std::vector<std::string> cols = split(trim(header), ',');
    const std::vector<std::string> fixed = {"t",       "L",         "A",       "Delta",
                                            "kappa_min", "kappa_max", "W_max",   "phi",
                                            "rho_min",   "rho_max",   "cheb_gap", "gb_residual",
                                            "v_min",     "eta_measure"};
    if (cols.size() < fixed.size() + 1)
        throw std::runtime_error(path + ": unexpected header '" + header + "'");
    for (std::size_t i = 0; i < fixed.size(); ++i)
        if (cols[i] != fixed[i])
            throw std::runtime_error(path + ": unexpected column '" + cols[i] + "'");
    diag::DiagnosticsSeries series;
    series.k_max = static_cast<int>(cols.size() - fixed.size()) - 1;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != cols.size())
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                                     std::to_string(cols.size()) + " fields");
        std::vector<double> v(fields.size());
        for (std::size_t i = 0; i < fields.size(); ++i)
            v[i] = parse_double("column " + cols[i], fields[i]);
        diag::DiagnosticsRow r;
        r.t = v[0];
        r.length = v[1];
        r.area = v[2];
        r.deficit = v[3];
        r.kappa_min = v[4];
        r.kappa_max = v[5];
        r.w_max = v[6];
        r.phi = v[7];
        r.rho_min = v[8];
        r.rho_max = v[9];
        r.cheb_gap = v[10];
        r.gb_residual = v[11];
        r.v_min = v[12];
        r.eta_measure = v[13];
        r.modes.assign(v.begin() + 14, v.end());
        series.rows.push_back(std::move(r));
    }
    return series;
}

namespace {

std::string snapshot_basename(long step_count) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "curve_%06ld", step_count);
    return buf;
}

nlohmann::ordered_json config_to_json(const ScenarioConfig& cfg) {
    nlohmann::ordered_json j;
    j["alpha"] = cfg.flow.alpha;
    j["mode"] = to_string(cfg.flow.mode);
    j["n"] = cfg.flow.n;
    j["cfl_safety"] = cfg.flow.cfl_safety;
    j["t_end"] = cfg.flow.t_end;
    j["blowup_kappa"] = cfg.flow.blowup_kappa;
    j["convexity_floor"] = cfg.flow.convexity_floor;
    j["convergence_deficit"] = cfg.flow.convergence_deficit;
    j["recenter_trigger"] = cfg.flow.recenter_trigger;
    j["snapshot_interval"] = cfg.flow.snapshot_interval;
    j["exec"] = exec_name(cfg.flow.exec);
    j["init"] = cfg.init_text;
    j["out"] = cfg.out;
    j["k_max"] = cfg.k_max;
    j["series_stride"] = cfg.series_stride;
    j["emit_csv"] = cfg.emit_csv;
    j["emit_json"] = cfg.emit_json;
    j["emit_svg"] = cfg.emit_svg;
    return j;
}

ScenarioConfig config_from_json(const nlohmann::json& j) {
    ScenarioConfig cfg;
    cfg.flow.alpha = j.at("alpha").get<double>();
    cfg.flow.mode = mode_from_string(j.at("mode").get<std::string>());
    cfg.flow.n = j.at("n").get<int>();
    cfg.flow.cfl_safety = j.at("cfl_safety").get<double>();
    cfg.flow.t_end = j.at("t_end").get<double>();
    cfg.flow.blowup_kappa = j.at("blowup_kappa").get<double>();
    cfg.flow.convexity_floor = j.at("convexity_floor").get<double>();
    cfg.flow.convergence_deficit = j.at("convergence_deficit").get<double>();
    cfg.flow.recenter_trigger = j.at("recenter_trigger").get<double>();
    cfg.flow.snapshot_interval = j.at("snapshot_interval").get<double>();
    cfg.flow.exec = parse_exec(j.at("exec").get<std::string>());
    cfg.init_text = j.at("init").get<std::string>();
    cfg.init = parse_init(cfg.init_text);
    cfg.out = j.at("out").get<std::string>();
    cfg.k_max = j.at("k_max").get<int>();
    cfg.series_stride = j.at("series_stride").get<long>();
    cfg.emit_csv = j.at("emit_csv").get<bool>();
    cfg.emit_json = j.at("emit_json").get<bool>();
    cfg.emit_svg = j.at("emit_svg").get<bool>();
    return cfg;
}

}  // namespace

std::string write_snapshot(const FlowState& state, const ScenarioConfig& config,
                           const std::string& dir) {
    const std::string base = dir + "/" + snapshot_basename(state.step_count);
    const std::string csv_path = base + ".csv";
    {
        std::ofstream out(csv_path);
        if (!out) throw std::runtime_error("cannot write '" + csv_path + "'");
        out << "theta,rho\n";
        const int n = state.curve.n();
        for (int j = 0; j < n; ++j)
            out << fmt17(two_pi * static_cast<double>(j) / static_cast<double>(n)) << ','
                << fmt17(state.curve.rho[static_cast<std::size_t>(j)]) << "\n";
    }
    nlohmann::ordered_json j;
    j["t"] = state.t;
    j["step_count"] = state.step_count;
    j["config"] = config_to_json(config);
    std::ofstream out(base + ".json");
    if (!out) throw std::runtime_error("cannot write '" + base + ".json'");
    out << j.dump(2) << "\n";
    return csv_path;
}

Snapshot read_snapshot(const std::string& csv_path) {
    if (csv_path.size() < 4 || csv_path.substr(csv_path.size() - 4) != ".csv")
        throw std::runtime_error("snapshot path must end in .csv: '" + csv_path + "'");
    const std::string json_path = csv_path.substr(0, csv_path.size() - 4) + ".json";

    std::ifstream jin(json_path);
    if (!jin) throw std::runtime_error("cannot open snapshot sidecar '" + json_path + "'");
    nlohmann::json j = nlohmann::json::parse(jin);

    Snapshot snap;
    snap.config = config_from_json(j.at("config"));

    std::ifstream fin(csv_path);
    if (!fin) throw std::runtime_error("cannot open snapshot '" + csv_path + "'");
    std::string line;
    if (!std::getline(fin, line) || trim(line) != "theta,rho")
        throw std::runtime_error(csv_path + ": expected header 'theta,rho'");
    std::vector<double> rho;
    while (std::getline(fin, line)) {
        line = trim(line);
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 2)
            throw std::runtime_error(csv_path + ": expected theta,rho rows");
        rho.push_back(parse_double("rho", fields[1]));
    }
    snap.state = make_state(snap.config.flow, RadialCurve::from_samples(std::move(rho)),
                            j.at("t").get<double>(), j.at("step_count").get<long>());
    return snap;
}

void write_summary_json(const RunOutcome& outcome, const ScenarioConfig& config,
                        const std::string& path) {
    nlohmann::ordered_json j;
    j["reason"] = to_string(outcome.reason);
    j["exit_code"] = exit_code_for(outcome.reason);
    j["t_final"] = outcome.final_state.t;
    j["steps"] = outcome.final_state.step_count;

    const GeometricSummary s = summarize(outcome.final_state.curve, config.flow.exec);
    nlohmann::ordered_json fin;
    fin["length"] = s.length;
    fin["area"] = s.area;
    fin["deficit"] = s.deficit;
    fin["kappa_min"] = s.kappa_min;
    fin["kappa_max"] = s.kappa_max;
    fin["w_max"] = s.w_max;
    fin["total_curvature"] = s.total_curvature;
    fin["rho_min"] = s.rho_min;
    fin["rho_max"] = s.rho_max;
    fin["inner_radius_lb"] = s.bounds.rho_minus_lb;
    if (s.bounds.rho_plus_ub)
        fin["outer_radius_ub"] = *s.bounds.rho_plus_ub;
    else
        fin["outer_radius_ub"] = nullptr;
    j["final"] = fin;

    const bool area_mode = config.flow.mode == Mode::AreaPreserving;
    const auto& rows = outcome.series.rows;
    const double c0 = area_mode ? rows.front().area : rows.front().length;
    const double c1 = area_mode ? rows.back().area : rows.back().length;
    j["conserved"] = {{"quantity", area_mode ? "area" : "length"},
                      {"initial", c0},
                      {"final", c1},
                      {"relative_drift", std::abs(c1 - c0) / c0}};

    const double predicted = diag::limit_radius(config.flow.mode, c0);
    double achieved = 0.0;
    {
        FlowState centered = outcome.final_state;
        try {
            centered = recenter(outcome.final_state, config.flow);
        } catch (const std::exception&) {
            // keep the uncentered state; the mean is then only indicative
        }
        for (double r : centered.curve.rho) achieved += r;
        achieved /= static_cast<double>(centered.curve.rho.size());
    }
    j["limit_circle"] = {
        {"predicted_radius", predicted},
        {"achieved_mean_radius", achieved},
        {"predicted_length", circle_length(predicted)},
        {"predicted_area", circle_area(predicted)},
        {"final_length_rel_error",
         std::abs(s.length - circle_length(predicted)) / circle_length(predicted)},
        {"final_area_rel_error",
         std::abs(s.area - circle_area(predicted)) / circle_area(predicted)}};

    nlohmann::ordered_json rates = nlohmann::ordered_json::object();
    const double t_final = outcome.final_state.t;
    const diag::LinearizedModel model = diag::linear_model(config.flow.alpha, predicted);
    for (int k = 2; k <= std::min(3, outcome.series.k_max); ++k) {
        for (const auto& window :
             {std::pair{0.05 * t_final, 0.25 * t_final}, std::pair{0.02 * t_final, 0.15 * t_final}}) {
            try {
                const diag::FitResult fit =
                    diag::fit_decay_rate(outcome.series, k, window.first, window.second);
                rates["mode_" + std::to_string(k)] = {{"rate", fit.rate},
                                                      {"r_squared", fit.r_squared},
                                                      {"model_rate", model.lambda(k)},
                                                      {"window_start", window.first},
                                                      {"window_end", window.second}};
                break;
            } catch (const std::exception&) {
                // window unusable (too few samples or noise floor); try the next
            }
        }
    }
    j["decay_rates"] = rates;

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

void render_svg(const RadialCurve& curve, const std::string& path,
                std::optional<double> limit_radius) {
    std::ostringstream ss;
    ss << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"600\" height=\"600\" "
          "viewBox=\"-1.05 -1.05 2.1 2.1\">\n";
    ss << "  <rect x=\"-1.05\" y=\"-1.05\" width=\"2.1\" height=\"2.1\" fill=\"#ffffff\"/>\n";
    ss << "  <circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#999999\" "
          "stroke-width=\"0.005\"/>\n";
    if (limit_radius) {
        ss << "  <circle cx=\"0\" cy=\"0\" r=\"" << fmt6(std::tanh(0.5 * *limit_radius))
           << "\" fill=\"none\" stroke=\"#cc4444\" stroke-width=\"0.005\" "
              "stroke-dasharray=\"0.03,0.02\"/>\n";
    }
    const auto pts = poincare_points(curve);
    ss << "  <path d=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        ss << (i == 0 ? "M" : " L") << fmt6(pts[i][0]) << ' ' << fmt6(-pts[i][1]);
    }
    ss << " Z\" fill=\"none\" stroke=\"#1f6fb4\" stroke-width=\"0.008\"/>\n";
    ss << "</svg>\n";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << ss.str();
}

void write_effective_config(const ScenarioConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "alpha=" << fmt17(cfg.flow.alpha) << "\n";
    out << "mode=" << to_string(cfg.flow.mode) << "\n";
    out << "n=" << cfg.flow.n << "\n";
    out << "cfl_safety=" << fmt17(cfg.flow.cfl_safety) << "\n";
    out << "t_end=" << fmt17(cfg.flow.t_end) << "\n";
    out << "blowup_kappa=" << fmt17(cfg.flow.blowup_kappa) << "\n";
    out << "convexity_floor=" << fmt17(cfg.flow.convexity_floor) << "\n";
    out << "convergence_deficit=" << fmt17(cfg.flow.convergence_deficit) << "\n";
    out << "recenter_trigger=" << fmt17(cfg.flow.recenter_trigger) << "\n";
    out << "snapshot_interval=" << fmt17(cfg.flow.snapshot_interval) << "\n";
    out << "exec=" << exec_name(cfg.flow.exec) << "\n";
    out << "init=" << cfg.init_text << "\n";
    out << "out=" << cfg.out << "\n";
    out << "k_max=" << cfg.k_max << "\n";
    out << "series_stride=" << cfg.series_stride << "\n";
    out << "emit_csv=" << (cfg.emit_csv ? "true" : "false") << "\n";
    out << "emit_json=" << (cfg.emit_json ? "true" : "false") << "\n";
    out << "emit_svg=" << (cfg.emit_svg ? "true" : "false") << "\n";
}

namespace {

int drive_run(const ScenarioConfig& cfg, const RadialCurve& initial, double t0, long step0,
              std::ostream& log) {
    std::filesystem::create_directories(cfg.out);
    write_effective_config(cfg, cfg.out + "/effective_config.cfg");

    const double conserved0 =
        cfg.flow.mode == Mode::AreaPreserving ? area(initial) : length(initial);
    const double predicted = diag::limit_radius(cfg.flow.mode, conserved0);

    const auto on_snapshot = [&](const FlowState& s) {
        const std::string csv = write_snapshot(s, cfg, cfg.out);
        if (cfg.emit_svg)
            render_svg(s.curve, csv.substr(0, csv.size() - 4) + ".svg", predicted);
    };

    const RunOutcome outcome = run(cfg.flow, initial, t0, step0, on_snapshot, cfg.k_max);

    const std::string final_csv = write_snapshot(outcome.final_state, cfg, cfg.out);
    if (cfg.emit_svg)
        render_svg(outcome.final_state.curve, final_csv.substr(0, final_csv.size() - 4) + ".svg",
                   predicted);
    if (cfg.emit_csv) write_series_csv(outcome.series, cfg.out + "/series.csv", cfg.series_stride);
    if (cfg.emit_json) write_summary_json(outcome, cfg, cfg.out + "/summary.json");

    log << "reason=" << to_string(outcome.reason) << " t=" << fmt17(outcome.final_state.t)
        << " steps=" << outcome.final_state.step_count
        << " L=" << fmt17(outcome.series.rows.back().length)
        << " A=" << fmt17(outcome.series.rows.back().area)
        << " Delta=" << fmt17(outcome.series.rows.back().deficit) << "\n";
    return exit_code_for(outcome.reason);
}

}  // namespace

int cmd_run(ScenarioConfig config, const std::string& out_override, std::ostream& log) {
    if (!out_override.empty()) config.out = out_override;
    validate_scenario(config);
    const RadialCurve initial = build_initial(config.init, config.flow.n);
    return drive_run(config, initial, 0.0, 0, log);
}

int cmd_verify(std::ostream& os) { return verify::run_verification_suite(os) ? 0 : 1; }

int cmd_resume(const std::string& snapshot_path, const std::vector<std::string>& overrides,
               const std::string& out_override, std::ostream& log) {
    Snapshot snap = read_snapshot(snapshot_path);
    ScenarioConfig cfg = snap.config;
    for (const std::string& kv : overrides) {
        const auto eq = kv.find('=');
        const std::string key = eq == std::string::npos ? kv : trim(kv.substr(0, eq));
        if (key == "alpha" || key == "mode" || key == "n" || key == "init")
            throw std::runtime_error("resume: '" + key + "' is fixed by the snapshot");
        apply_override(cfg, kv);
    }
    if (!out_override.empty()) cfg.out = out_override;
    validate_scenario(cfg);
    return drive_run(cfg, snap.state.curve, snap.state.t, snap.state.step_count, log);
}

}  // namespace hypflow::io
