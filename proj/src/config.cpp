#include "veldrift/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "veldrift/errors.hpp"
#include "veldrift/random.hpp"

namespace veldrift::config {

namespace {

using K = ValueKind;

// Shared parameter blocks. Bounds are the validity limits of the model, not
// tuning ranges.
std::vector<ParamSpec> diffusion_params() {
    return {
        {"dv_rms", K::Real, "1", false, 0.0, false, {}, {}, "velocity resolution of one measurement"},
        {"tau", K::Real, "1", false, 0.0, true, {}, {}, "emission / correlation time"},
        {"c", K::Real, {}, false, 0.0, true, {}, {}, "speed of light; defaults to the unit system's c"},
        {"mean0", K::Real, "0", false, {}, false, {}, {}, "initial mean velocity"},
        {"sigma0", K::Real, "0.5", false, 0.0, true, {}, {}, "initial Gaussian width"},
        {"t_end", K::Real, "10", false, 0.0, true, {}, {}, "duration"},
        {"record_every", K::Real, "1", false, 0.0, true, {}, {}, "moment recording interval"},
        {"n_cells", K::Integer, "1024", false, 16.0, false, {}, {}, "velocity grid cells"},
    };
}

std::vector<ParamSpec> with(std::vector<ParamSpec> base, std::vector<ParamSpec> extra) {
    for (auto& p : extra) {
        auto it = std::find_if(base.begin(), base.end(), [&](const ParamSpec& q) { return q.name == p.name; });
        if (it != base.end()) *it = std::move(p);
        else base.push_back(std::move(p));
    }
    return base;
}

std::vector<ExperimentInfo> build_registry() {
    std::vector<ExperimentInfo> r;
    r.push_back({Experiment::MeasurementDemo,
                 "single mutual measurement: entangle, decohere, sample the collapse",
                 UnitMode::Nondimensional,
                 {
                     {"weight_f1", K::Real, "0.5", false, 0.0, false, 1.0, {}, "weight of |f1>"},
                     {"weight_f2", K::Real, "0.5", false, 0.0, false, 1.0, {}, "weight of |f2>"},
                     {"samples", K::Integer, "100000", false, 1.0, false, {}, {}, "collapse samples"},
                 }});
    r.push_back({Experiment::Drift, "Fokker-Planck drift of the mean velocity vs -dv^2/(2 c tau)",
                 UnitMode::Nondimensional,
                 with(diffusion_params(),
                      {{"tolerance", K::Real, "0.01", false, 0.0, true, {}, {}, "relative tolerance"}})});
    r.push_back({Experiment::Heating, "Fokker-Planck variance growth vs 2 <D_v>", UnitMode::Nondimensional,
                 with(diffusion_params(),
                      {{"tolerance", K::Real, "0.01", false, 0.0, true, {}, {}, "relative tolerance"}})});
    r.push_back({Experiment::Friction, "friction-limited heating, fixed or self-consistent environment",
                 UnitMode::Nondimensional,
                 with(diffusion_params(),
                      {
                          {"gamma", K::Real, "0.1", false, 0.0, true, {}, {}, "friction coefficient"},
                          {"v0_mode", K::Text, "fixed", false, {}, false, {}, {"fixed", "self-consistent"},
                           "environment velocity mode"},
                          {"v0", K::Real, "0", false, {}, false, {}, {}, "environment velocity (fixed mode)"},
                          {"sigma0", K::Real, {}, false, 0.0, true, {}, {},
                           "initial width; defaults to 0.5 (fixed) or the stationary width (self-consistent)"},
                          {"t_end", K::Real, "200", false, 0.0, true, {}, {}, "duration"},
                          {"tolerance_variance", K::Real, "0.01", false, 0.0, true, {}, {}, "relative"},
                          {"tolerance_mean", K::Real, "0.02", false, 0.0, true, {}, {}, "relative"},
                      })});
    r.push_back({Experiment::FpVsSde, "Fokker-Planck vs stochastic ensemble moments at checkpoints",
                 UnitMode::Nondimensional,
                 with(diffusion_params(),
                      {
                          {"gamma", K::Real, "0", false, 0.0, false, {}, {}, "friction coefficient"},
                          {"v0_mode", K::Text, "fixed", false, {}, false, {}, {"fixed", "self-consistent"},
                           "environment velocity mode"},
                          {"v0", K::Real, "0", false, {}, false, {}, {}, "environment velocity"},
                          {"samples", K::Integer, "100000", false, 2.0, false, {}, {}, "ensemble size"},
                          {"sde_dt", K::Real, "0.01", false, 0.0, true, {}, {}, "ensemble time step"},
                          {"checkpoints", K::Integer, "10", false, 1.0, false, {}, {}, "comparison times"},
                          {"workers", K::Integer, "1", false, 1.0, false, 256.0, {}, "ensemble threads"},
                          {"z_max", K::Real, "3", false, 0.0, true, {}, {}, "allowed standard errors"},
                      })});
    r.push_back({Experiment::NewtonSweep, "Planck-scale chain acceleration over masses and separations",
                 UnitMode::SI,
                 {
                     {"masses", K::RealList, "1e10,1e15,1e20,1e25,1e30", false, 0.0, true, {}, {}, "kg"},
                     {"separations", K::RealList, "6.371e6", false, 0.0, true, {}, {}, "m"},
                 }});
    r.push_back({Experiment::ConsistencyReport, "recoil, photon budget, temperature, validity of a body",
                 UnitMode::SI,
                 {
                     {"mass", K::Real, "0.001", false, 0.0, true, {}, {}, "kg"},
                     {"density", K::Real, "1000", false, 0.0, true, {}, {}, "kg/m^3"},
                     {"size", K::Real, "0.01", false, 0.0, true, {}, {}, "m"},
                     {"temperature", K::Real, "300", false, 0.0, false, {}, {}, "K"},
                     {"surface_area", K::Real, {}, false, 0.0, true, {}, {}, "m^2; defaults to 4 pi size^2"},
                     {"solid_angle", K::Real, "1e-9", false, 0.0, true, {}, {}, "sr"},
                     {"omega", K::Real, {}, false, 0.0, true, {}, {}, "rad/s; defaults to the Wien peak"},
                 }});
    r.push_back({Experiment::AppendixD, "split-object velocity variance bookkeeping", UnitMode::Nondimensional,
                 {
                     {"alpha", K::Real, {}, false, 0.0, false, {}, {}, "(m/s)/kg; derived from separation if absent"},
                     {"separation", K::Real, {}, false, 0.0, true, {}, {}, "m; used when alpha is absent"},
                     {"mass", K::Real, "1", false, 0.0, true, {}, {}, "total mass M_A"},
                     {"n_intervals", K::Integer, "1", false, 1.0, false, {}, {}, "tau_A intervals"},
                     {"samples", K::Integer, "100000", false, 2.0, false, {}, {}, "trajectories"},
                     {"delta_sigma", K::Real, "1", false, 0.0, false, {}, {}, "rms mutual increment"},
                 }});
    r.push_back({Experiment::Spreading, "free Gaussian wave-packet width sigma(t)", UnitMode::Nondimensional,
                 {
                     {"sigma0", K::Real, "1", false, 0.0, true, {}, {}, "initial width"},
                     {"mass", K::Real, "1", false, 0.0, true, {}, {}, "mass"},
                     {"t_end", K::Real, "4", false, 0.0, true, {}, {}, "duration"},
                     {"n_points", K::Integer, "41", false, 2.0, false, {}, {}, "samples in time"},
                 }});
    return r;
}

constexpr std::string_view kConstantKeys[] = {"c",     "hbar",           "G",         "kB",
                                              "sigma_SB", "velocity_scale", "time_scale"};
constexpr std::string_view kRootKeys[] = {"experiment", "seed", "output_dir", "unit_mode"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string canonical(const ParamSpec& spec, std::string_view raw, std::vector<std::string>& errors,
                      const std::string& where) {
    auto range_error = [&](double v) -> bool {
        if (spec.min && (spec.min_exclusive ? !(v > *spec.min) : !(v >= *spec.min))) {
            errors.push_back(where + ": value " + format_real(v) + " out of range (must be " +
                             (spec.min_exclusive ? "> " : ">= ") + format_real(*spec.min) + ")");
            return true;
        }
        if (spec.max && !(v <= *spec.max)) {
            errors.push_back(where + ": value " + format_real(v) + " out of range (must be <= " +
                             format_real(*spec.max) + ")");
            return true;
        }
        return false;
    };
    switch (spec.kind) {
        case K::Real: {
            auto v = parse_real(raw);
            if (!v) {
                errors.push_back(where + ": '" + std::string(raw) + "' is not a number");
                return {};
            }
            range_error(*v);
            return format_real(*v);
        }
        case K::Integer: {
            auto v = parse_integer(raw);
            if (!v) {
                errors.push_back(where + ": '" + std::string(raw) + "' is not a non-negative integer");
                return {};
            }
            range_error(static_cast<double>(*v));
            return std::to_string(*v);
        }
        case K::Text: {
            std::string value(trim(raw));
            if (!spec.choices.empty() &&
                std::find(spec.choices.begin(), spec.choices.end(), value) == spec.choices.end()) {
                std::string options;
                for (auto c : spec.choices) options += (options.empty() ? "" : ", ") + std::string(c);
                errors.push_back(where + ": '" + value + "' is not one of {" + options + "}");
            }
            return value;
        }
        case K::RealList: {
            std::string out;
            std::string_view rest = raw;
            bool any = false;
            while (true) {
                const auto comma = rest.find(',');
                const auto item = trim(rest.substr(0, comma));
                auto v = parse_real(item);
                if (!v) {
                    errors.push_back(where + ": list item '" + std::string(item) + "' is not a number");
                    return {};
                }
                range_error(*v);
                out += (any ? "," : "") + format_real(*v);
                any = true;
                if (comma == std::string_view::npos) break;
                rest.remove_prefix(comma + 1);
            }
            return out;
        }
    }
    return {};
}

}  // namespace

std::string_view to_string(Experiment e) {
    switch (e) {
        case Experiment::MeasurementDemo: return "measurement-demo";
        case Experiment::Drift: return "drift";
        case Experiment::Heating: return "heating";
        case Experiment::Friction: return "friction";
        case Experiment::FpVsSde: return "fp-vs-sde";
        case Experiment::NewtonSweep: return "newton-sweep";
        case Experiment::ConsistencyReport: return "consistency-report";
        case Experiment::AppendixD: return "appendix-d";
        case Experiment::Spreading: return "spreading";
    }
    return "?";
}

std::optional<Experiment> experiment_from_string(std::string_view name) {
    for (const auto& e : experiments()) {
        if (to_string(e.id) == name) return e.id;
    }
    return std::nullopt;
}

const std::vector<ExperimentInfo>& experiments() {
    static const std::vector<ExperimentInfo> registry = build_registry();
    return registry;
}

const ExperimentInfo& info(Experiment e) {
    for (const auto& x : experiments()) {
        if (x.id == e) return x;
    }
    throw InvalidInput("unregistered experiment");
}

std::optional<double> parse_real(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
    return value;
}

std::optional<std::uint64_t> parse_integer(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec == std::errc{} && ptr == text.data() + text.size()) return value;
    // Accept integral reals such as 1e5.
    auto real = parse_real(text);
    if (real && *real >= 0.0 && *real < 1.8e19 && std::floor(*real) == *real) {
        return static_cast<std::uint64_t>(*real);
    }
    return std::nullopt;
}

std::string format_real(double value) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return buffer;
}

bool ExperimentConfig::has(std::string_view key) const { return parameters.contains(std::string(key)); }

const std::string& ExperimentConfig::text(std::string_view key) const {
    auto it = parameters.find(std::string(key));
    if (it == parameters.end()) throw InvalidInput("parameter '" + std::string(key) + "' is not set");
    return it->second;
}

double ExperimentConfig::real(std::string_view key) const { return *parse_real(text(key)); }

std::uint64_t ExperimentConfig::integer(std::string_view key) const { return *parse_integer(text(key)); }

std::optional<double> ExperimentConfig::optional_real(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    return real(key);
}

std::vector<double> ExperimentConfig::real_list(std::string_view key) const {
    std::vector<double> out;
    std::stringstream in(text(key));
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(*parse_real(item));
    return out;
}

ParseOutcome parse_config(std::string_view text) {
    namespace pt = boost::property_tree;
    ParseOutcome outcome;
    auto& errors = outcome.errors;

    pt::ptree tree;
    try {
        std::istringstream in{std::string(text)};
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        errors.push_back("syntax: line " + std::to_string(e.line()) + ": " + e.message());
        return outcome;
    }

    ExperimentConfig cfg{};
    cfg.seed = kDefaultSeed;

    // Root keys are the childless nodes; sections have children.
    std::map<std::string, std::string> root;
    std::map<std::string, const pt::ptree*> sections;
    for (const auto& [key, node] : tree) {
        if (node.empty()) root[key] = node.data();
        else sections[key] = &node;
    }
    for (const auto& [key, value] : root) {
        if (std::find(std::begin(kRootKeys), std::end(kRootKeys), key) == std::end(kRootKeys)) {
            errors.push_back(key + ": unknown key");
        }
    }

    std::optional<Experiment> experiment;
    if (auto it = root.find("experiment"); it == root.end()) {
        errors.push_back("experiment: missing required key");
    } else if (!(experiment = experiment_from_string(trim(it->second)))) {
        errors.push_back("experiment: unknown experiment '" + it->second + "'");
    }

    if (auto it = root.find("seed"); it != root.end()) {
        if (auto v = parse_integer(it->second)) cfg.seed = *v;
        else errors.push_back("seed: '" + it->second + "' is not a 64-bit unsigned integer");
    }

    UnitMode mode = experiment ? info(*experiment).default_units : UnitMode::SI;
    if (auto it = root.find("unit_mode"); it != root.end()) {
        try {
            mode = unit_mode_from_string(trim(it->second));
        } catch (const InvalidInput&) {
            errors.push_back("unit_mode: '" + it->second + "' is not SI or nondimensional");
        }
    }
    cfg.units = mode == UnitMode::SI ? UnitSystem::si() : UnitSystem::nondimensional();

    if (auto it = sections.find("constants"); it != sections.end()) {
        if (mode == UnitMode::SI) {
            errors.push_back("constants: overrides are only allowed with unit_mode = nondimensional");
        }
        for (const auto& [key, node] : *it->second) {
            const std::string where = "constants." + key;
            if (std::find(std::begin(kConstantKeys), std::end(kConstantKeys), key) == std::end(kConstantKeys)) {
                errors.push_back(where + ": unknown key");
                continue;
            }
            auto v = parse_real(node.data());
            if (!v || !(*v > 0.0)) {
                errors.push_back(where + ": must be a positive number");
                continue;
            }
            auto& k = cfg.units.constants;
            if (key == "c") k.c = *v;
            else if (key == "hbar") k.hbar = *v;
            else if (key == "G") k.G = *v;
            else if (key == "kB") k.kB = *v;
            else if (key == "sigma_SB") k.sigma_SB = *v;
            else if (key == "velocity_scale") cfg.units.velocity_scale = *v;
            else if (key == "time_scale") cfg.units.time_scale = *v;
        }
    }

    for (const auto& [name, node] : sections) {
        if (name == "constants") continue;
        if (!experiment || name != to_string(*experiment)) {
            errors.push_back(name + ": unknown section" +
                             (experiment ? " (expected [" + std::string(to_string(*experiment)) + "])" : ""));
        }
    }

    if (experiment) {
        cfg.experiment = *experiment;
        const auto& spec = info(*experiment);
        const std::string section(to_string(*experiment));
        const pt::ptree* params = sections.contains(section) ? sections[section] : nullptr;
        std::set<std::string> seen;
        if (params) {
            for (const auto& [key, node] : *params) {
                const std::string where = section + "." + key;
                auto it = std::find_if(spec.params.begin(), spec.params.end(),
                                       [&](const ParamSpec& p) { return p.name == key; });
                if (it == spec.params.end()) {
                    errors.push_back(where + ": unknown key");
                    continue;
                }
                seen.insert(key);
                cfg.parameters[key] = canonical(*it, node.data(), errors, where);
            }
        }
        for (const auto& p : spec.params) {
            const std::string key(p.name);
            if (seen.contains(key)) continue;
            if (p.required) errors.push_back(section + "." + key + ": missing required key");
            else if (p.default_value) cfg.parameters[key] = canonical(p, *p.default_value, errors, section + "." + key);
        }
        const auto& root_out = root.find("output_dir");
        cfg.output_dir = root_out != root.end() ? std::filesystem::path(std::string(trim(root_out->second)))
                                                : std::filesystem::path("out") / section;
    }

    if (errors.empty()) outcome.config = std::move(cfg);
    return outcome;
}

ParseOutcome load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        ParseOutcome outcome;
        outcome.errors.push_back(path.string() + ": cannot open config file");
        return outcome;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

}  // namespace veldrift::config
