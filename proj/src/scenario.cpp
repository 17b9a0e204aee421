#include "fecap/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "fecap/csv.hpp"
#include "fecap/units.hpp"

namespace fecap {

using units::Dimension;

std::string_view to_string(ScenarioKind k) {
    switch (k) {
    case ScenarioKind::hysteresis: return "hysteresis";
    case ScenarioKind::kinetics: return "kinetics";
    case ScenarioKind::cv: return "cv";
    case ScenarioKind::iv: return "iv";
    case ScenarioKind::program: return "program";
    case ScenarioKind::transient: return "transient";
    case ScenarioKind::mc: return "mc";
    case ScenarioKind::bench: return "bench";
    }
    return "?";
}

std::string_view to_string(WaveShape s) {
    switch (s) {
    case WaveShape::triangle: return "triangle";
    case WaveShape::pulse: return "pulse";
    case WaveShape::train: return "train";
    case WaveShape::pwl: return "pwl";
    }
    return "?";
}

Waveform TransientScenario::waveform() const {
    switch (shape) {
    case WaveShape::triangle: return Waveform::triangle(amplitude, frequency, cycles, mode);
    case WaveShape::pulse: return Waveform::pulse(amplitude, width, edge, delay, tail, mode);
    case WaveShape::train: return Waveform::pulse_train(amplitude, width, period, count, edge, mode);
    case WaveShape::pwl: {
        if (times.size() != values.size() || times.size() < 2) {
            throw std::invalid_argument("pwl: times and values need equal length >= 2");
        }
        std::vector<Breakpoint> pts;
        for (std::size_t i = 0; i < times.size(); ++i) pts.push_back({times[i], values[i]});
        return Waveform(mode, std::move(pts));
    }
    }
    throw std::invalid_argument("unknown waveform shape");
}

McDistribution McScenarioSpec::distribution() const {
    McDistribution d = set == "85C" ? McDistribution::hot() : McDistribution::room_temperature();
    for (const auto& o : overrides) {
        auto it = std::find_if(d.entries.begin(), d.entries.end(),
                               [&](const McEntry& e) { return e.param == o.param; });
        if (it != d.entries.end()) {
            *it = o;
        } else {
            d.entries.push_back(o);
        }
    }
    return d;
}

McSpec Scenario::mc_spec() const {
    McSpec s;
    s.scenario = mc.scenario;
    s.n_trials = mc.trials;
    s.seed = mc.seed;
    s.workers = mc.workers;
    s.amplitude = hysteresis.amplitude;
    s.frequency = hysteresis.frequency;
    s.n_cycles = hysteresis.cycles;
    s.amplitudes = kinetics.amplitudes;
    s.widths = kinetics.widths;
    s.kinetics = kinetics.options;
    s.program = program.train;
    s.solver = solver;
    return s;
}

namespace {

struct Line {
    int no = 0;
    std::string key;
    std::string value;                // raw text after '='
    std::vector<std::string> tokens;  // whitespace split of value
};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string t; in >> t;) out.push_back(t);
    return out;
}

bool is_number(const std::string& t) {
    try {
        parse_number(t);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

[[noreturn]] void fail(const Line& l, const std::string& msg) {
    throw ParseError(l.no, l.key + ": " + msg + " ('" + l.value + "')");
}

// Numbers followed by one unit token (optional for dimensionless values).
std::vector<double> quantities(const Line& l, Dimension d, std::size_t min_count, std::size_t max_count) {
    std::vector<std::string> toks = l.tokens;
    std::string unit;
    if (!toks.empty() && !is_number(toks.back())) {
        unit = toks.back();
        toks.pop_back();
    }
    if (toks.size() < min_count || toks.size() > max_count) {
        fail(l, min_count == max_count ? "expected " + std::to_string(min_count) + " value(s)"
                                       : "expected at least " + std::to_string(min_count) + " value(s)");
    }
    if (unit.empty() && d != Dimension::none) fail(l, "missing unit");
    std::vector<double> out;
    for (const auto& t : toks) {
        double v = 0.0;
        try {
            v = units::to_si(parse_number(t), unit, d);
        } catch (const std::invalid_argument& e) {
            fail(l, e.what());
        }
        if (!std::isfinite(v)) fail(l, "value must be finite");
        out.push_back(v);
    }
    return out;
}

double quantity(const Line& l, Dimension d) { return quantities(l, d, 1, 1).front(); }

std::string word(const Line& l) {
    if (l.tokens.size() != 1) fail(l, "expected a single word");
    return l.tokens.front();
}

std::int64_t integer(const Line& l, std::int64_t lo) {
    const std::string w = word(l);
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc{} || p != w.data() + w.size()) fail(l, "expected an integer");
    if (v < lo) fail(l, "value must be >= " + std::to_string(lo));
    return v;
}

std::uint64_t unsigned_integer(const Line& l) {
    const std::string w = word(l);
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc{} || p != w.data() + w.size()) fail(l, "expected an unsigned integer");
    return v;
}

bool boolean(const Line& l) {
    const std::string w = word(l);
    if (w == "true" || w == "yes" || w == "1") return true;
    if (w == "false" || w == "no" || w == "0") return false;
    fail(l, "expected true or false");
}

double positive(const Line& l, Dimension d) {
    const double v = quantity(l, d);
    if (!(v > 0.0)) fail(l, "value must be positive");
    return v;
}

double non_negative(const Line& l, Dimension d) {
    const double v = quantity(l, d);
    if (!(v >= 0.0)) fail(l, "value must be non-negative");
    return v;
}

int count(const Line& l, int lo) {
    const auto v = integer(l, lo);
    if (v > 1'000'000'000) fail(l, "value too large");
    return static_cast<int>(v);
}

using Handler = std::function<void(const Line&)>;

template <class E>
E choice(const Line& l, std::initializer_list<std::pair<std::string_view, E>> options) {
    const std::string w = word(l);
    std::string names;
    for (const auto& [name, value] : options) {
        if (name == w) return value;
        names += names.empty() ? std::string(name) : " | " + std::string(name);
    }
    fail(l, "expected one of " + names);
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    std::optional<Line> transient_amplitude;
    std::optional<Line> transient_values;
    std::optional<Line> pwl_times_line;

    std::map<std::string, std::map<std::string, Handler>> sections;
    auto& sc = sections["scenario"];
    sc["kind"] = [&](const Line& l) {
        s.kind = choice<ScenarioKind>(l, {{"hysteresis", ScenarioKind::hysteresis},
                                          {"kinetics", ScenarioKind::kinetics},
                                          {"cv", ScenarioKind::cv},
                                          {"iv", ScenarioKind::iv},
                                          {"program", ScenarioKind::program},
                                          {"transient", ScenarioKind::transient},
                                          {"mc", ScenarioKind::mc},
                                          {"bench", ScenarioKind::bench}});
    };
    sc["out"] = [&](const Line& l) {
        if (l.value.empty()) fail(l, "empty path");
        s.out = l.value;
    };

    auto& dev = sections["device"];
    for (Param p : kAllParams) {
        dev[std::string(param_key(p))] = [&s, p](const Line& l) {
            const double v = quantity(l, units::param_dimension(p));
            try {
                validate_param(p, v);
            } catch (const std::invalid_argument& e) {
                throw ParseError(l.no, std::string(e.what()) + " ('" + l.value + "')");
            }
            set_param(s.device, p, v);
        };
    }

    auto& sol = sections["solver"];
    sol["dt"] = [&](const Line& l) { s.solver.dt = positive(l, Dimension::time); };
    sol["newton_tol_v"] = [&](const Line& l) { s.solver.newton_tol_v = positive(l, Dimension::voltage); };
    sol["newton_tol_i"] = [&](const Line& l) { s.solver.newton_tol_i = positive(l, Dimension::current); };
    sol["max_newton_iters"] = [&](const Line& l) { s.solver.max_newton_iters = count(l, 1); };
    sol["max_step_halvings"] = [&](const Line& l) { s.solver.max_step_halvings = count(l, 0); };
    sol["p_init"] = [&](const Line& l) {
        const double v = quantity(l, Dimension::none);
        if (!(v >= 0.0 && v <= 1.0)) fail(l, "value must lie in [0, 1]");
        s.solver.p_init = v;
    };
    sol["record_every"] = [&](const Line& l) { s.solver.record_every = count(l, 1); };
    sol["min_segment_steps"] = [&](const Line& l) { s.solver.min_segment_steps = count(l, 1); };

    auto& hy = sections["hysteresis"];
    hy["amplitude"] = [&](const Line& l) { s.hysteresis.amplitude = positive(l, Dimension::voltage); };
    hy["frequency"] = [&](const Line& l) { s.hysteresis.frequency = positive(l, Dimension::frequency); };
    hy["cycles"] = [&](const Line& l) { s.hysteresis.cycles = count(l, 2); };

    auto& ki = sections["kinetics"];
    ki["amplitudes"] = [&](const Line& l) {
        s.kinetics.amplitudes = quantities(l, Dimension::voltage, 1, 100000);
    };
    ki["widths"] = [&](const Line& l) {
        s.kinetics.widths = quantities(l, Dimension::time, 1, 100000);
        for (double w : s.kinetics.widths) {
            if (!(w > 0.0)) fail(l, "widths must be positive");
        }
    };
    ki["preset"] = [&](const Line& l) { s.kinetics.options.preset = quantity(l, Dimension::voltage); };
    ki["preset_width"] = [&](const Line& l) { s.kinetics.options.preset_width = positive(l, Dimension::time); };
    ki["settle"] = [&](const Line& l) { s.kinetics.options.settle = non_negative(l, Dimension::time); };
    ki["edge"] = [&](const Line& l) { s.kinetics.options.edge = non_negative(l, Dimension::time); };
    ki["steps_per_pulse"] = [&](const Line& l) { s.kinetics.options.steps_per_pulse = count(l, 1); };

    auto& cv = sections["cv"];
    cv["amplitude"] = [&](const Line& l) { s.cv.amplitude = positive(l, Dimension::voltage); };
    cv["frequency"] = [&](const Line& l) { s.cv.frequency = positive(l, Dimension::frequency); };
    cv["cycles"] = [&](const Line& l) { s.cv.cycles = count(l, 1); };
    cv["delta_v"] = [&](const Line& l) { s.cv.delta_v = positive(l, Dimension::voltage); };

    auto& iv = sections["iv"];
    iv["v_start"] = [&](const Line& l) { s.iv.v_start = quantity(l, Dimension::voltage); };
    iv["v_stop"] = [&](const Line& l) { s.iv.v_stop = quantity(l, Dimension::voltage); };
    iv["points"] = [&](const Line& l) { s.iv.points = count(l, 2); };

    auto& pr = sections["program"];
    pr["current"] = [&](const Line& l) { s.program.train.pulse_current = quantity(l, Dimension::current); };
    pr["width"] = [&](const Line& l) { s.program.train.pulse_width = positive(l, Dimension::time); };
    pr["pulses"] = [&](const Line& l) { s.program.train.n_pulses = count(l, 1); };
    pr["discharge"] = [&](const Line& l) { s.program.train.discharge_between = boolean(l); };
    pr["max_discharge"] = [&](const Line& l) { s.program.train.max_discharge = positive(l, Dimension::time); };
    pr["threshold"] = [&](const Line& l) {
        s.program.train.discharge_threshold = non_negative(l, Dimension::current);
    };
    pr["edge"] = [&](const Line& l) { s.program.train.edge = non_negative(l, Dimension::time); };
    pr["steps_per_pulse"] = [&](const Line& l) { s.program.train.steps_per_pulse = count(l, 1); };
    pr["compare_single"] = [&](const Line& l) { s.program.compare_single = boolean(l); };
    pr["single_current"] = [&](const Line& l) { s.program.single_current = quantity(l, Dimension::current); };
    pr["single_width"] = [&](const Line& l) { s.program.single_width = positive(l, Dimension::time); };

    auto& tr = sections["transient"];
    tr["shape"] = [&](const Line& l) {
        s.transient.shape = choice<WaveShape>(l, {{"triangle", WaveShape::triangle},
                                                  {"pulse", WaveShape::pulse},
                                                  {"train", WaveShape::train},
                                                  {"pwl", WaveShape::pwl}});
    };
    tr["mode"] = [&](const Line& l) {
        s.transient.mode = choice<DriveMode>(l, {{"voltage", DriveMode::voltage}, {"current", DriveMode::current}});
    };
    tr["amplitude"] = [&](const Line& l) { transient_amplitude = l; };
    tr["values"] = [&](const Line& l) { transient_values = l; };
    tr["frequency"] = [&](const Line& l) { s.transient.frequency = positive(l, Dimension::frequency); };
    tr["cycles"] = [&](const Line& l) { s.transient.cycles = count(l, 1); };
    tr["width"] = [&](const Line& l) { s.transient.width = positive(l, Dimension::time); };
    tr["period"] = [&](const Line& l) { s.transient.period = positive(l, Dimension::time); };
    tr["count"] = [&](const Line& l) { s.transient.count = count(l, 1); };
    tr["edge"] = [&](const Line& l) { s.transient.edge = non_negative(l, Dimension::time); };
    tr["delay"] = [&](const Line& l) { s.transient.delay = non_negative(l, Dimension::time); };
    tr["tail"] = [&](const Line& l) { s.transient.tail = non_negative(l, Dimension::time); };
    tr["times"] = [&](const Line& l) {
        s.transient.times = quantities(l, Dimension::time, 2, 10'000'000);
        pwl_times_line = l;
    };

    auto& mc = sections["mc"];
    mc["scenario"] = [&](const Line& l) {
        s.mc.scenario = choice<McScenario>(l, {{"hysteresis", McScenario::hysteresis},
                                               {"kinetics", McScenario::kinetics},
                                               {"program", McScenario::program}});
    };
    mc["trials"] = [&](const Line& l) { s.mc.trials = count(l, 1); };
    mc["seed"] = [&](const Line& l) { s.mc.seed = unsigned_integer(l); };
    mc["workers"] = [&](const Line& l) { s.mc.workers = count(l, 1); };
    mc["set"] = [&](const Line& l) {
        s.mc.set = word(l);
        if (s.mc.set != "21C" && s.mc.set != "85C") fail(l, "expected 21C or 85C");
    };
    for (Param p : kAllParams) {
        mc[std::string(param_key(p))] = [&s, p](const Line& l) {
            const auto v = quantities(l, units::param_dimension(p), 2, 2);
            // sigma is a width, so the temperature offset must not apply.
            double sigma = v[1];
            if (p == Param::temperature) sigma = v[1] - units::to_si(0.0, l.tokens.back(), Dimension::temperature);
            if (!(sigma >= 0.0)) fail(l, "sigma must be non-negative");
            McEntry e = McDistribution::make_entry(p, v[0], sigma, McDistribution::floor_for(p));
            try {
                validate_param(p, e.lower);
                validate_param(p, e.upper);
            } catch (const std::invalid_argument& ex) {
                fail(l, std::string("truncation bounds invalid: ") + ex.what());
            }
            s.mc.overrides.push_back(e);
        };
    }

    auto& be = sections["bench"];
    be["sizes"] = [&](const Line& l) {
        s.bench.sizes.clear();
        for (const auto& t : l.tokens) {
            std::size_t v = 0;
            auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
            if (ec != std::errc{} || p != t.data() + t.size() || v == 0) fail(l, "sizes must be positive integers");
            s.bench.sizes.push_back(v);
        }
        if (s.bench.sizes.empty()) fail(l, "sizes must not be empty");
    };
    be["current"] = [&](const Line& l) { s.bench.options.pulse_current = quantity(l, Dimension::current); };
    be["width"] = [&](const Line& l) { s.bench.options.pulse_width = positive(l, Dimension::time); };
    be["edge"] = [&](const Line& l) { s.bench.options.edge = non_negative(l, Dimension::time); };
    be["duration"] = [&](const Line& l) { s.bench.options.duration = positive(l, Dimension::time); };
    be["dt"] = [&](const Line& l) { s.bench.options.dt = positive(l, Dimension::time); };
    be["workers"] = [&](const Line& l) { s.bench.options.workers = count(l, 1); };

    std::map<std::string, Handler>* current = nullptr;
    std::string section_name;
    std::set<std::string> seen_sections;
    std::set<std::string> seen_keys;
    std::istringstream in{std::string(text)};
    int no = 0;
    for (std::string raw; std::getline(in, raw);) {
        ++no;
        if (no == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);  // BOM
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError(no, "malformed section header '" + line + "'");
            section_name = trim(line.substr(1, line.size() - 2));
            auto it = sections.find(section_name);
            if (it == sections.end()) throw ParseError(no, "unknown section '" + section_name + "'");
            if (!seen_sections.insert(section_name).second) {
                throw ParseError(no, "duplicate section '" + section_name + "'");
            }
            current = &it->second;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(no, "expected 'key = value', got '" + line + "'");
        if (current == nullptr) throw ParseError(no, "key outside of any section: '" + line + "'");
        Line l;
        l.no = no;
        l.key = trim(line.substr(0, eq));
        l.value = trim(line.substr(eq + 1));
        l.tokens = split_ws(l.value);
        auto h = current->find(l.key);
        if (h == current->end()) {
            throw ParseError(no, "unknown key '" + l.key + "' in [" + section_name + "]");
        }
        if (!seen_keys.insert(section_name + "." + l.key).second) {
            throw ParseError(no, "duplicate key '" + l.key + "' in [" + section_name + "]");
        }
        if (l.tokens.empty()) throw ParseError(no, "missing value for '" + l.key + "'");
        h->second(l);
    }

    // Keys whose dimension depends on the drive mode.
    const Dimension drive_dim = s.transient.mode == DriveMode::voltage ? Dimension::voltage : Dimension::current;
    if (transient_amplitude) s.transient.amplitude = quantity(*transient_amplitude, drive_dim);
    if (transient_values) s.transient.values = quantities(*transient_values, drive_dim, 2, 10'000'000);
    if (s.transient.times.size() != s.transient.values.size()) {
        const Line& l = pwl_times_line ? *pwl_times_line : transient_values ? *transient_values : Line{no, "times", "", {}};
        fail(l, "times and values must have equal length");
    }
    if (!s.transient.times.empty()) {
        for (std::size_t i = 1; i < s.transient.times.size(); ++i) {
            if (!(s.transient.times[i] > s.transient.times[i - 1])) fail(*pwl_times_line, "times must increase");
        }
    }
    try {
        s.device.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(no, e.what());
    }
    return s;
}

namespace {

class Emitter {
public:
    void section(std::string_view name) {
        if (!out_.str().empty()) out_ << '\n';
        out_ << '[' << name << "]\n";
    }
    void raw(std::string_view key, std::string_view value) { out_ << key << " = " << value << '\n'; }
    void num(std::string_view key, double v, Dimension d) {
        const auto u = units::si_unit(d);
        out_ << key << " = " << format_exact(v);
        if (!u.empty()) out_ << ' ' << u;
        out_ << '\n';
    }
    void list(std::string_view key, const std::vector<double>& v, Dimension d) {
        out_ << key << " =";
        for (double x : v) out_ << ' ' << format_exact(x);
        const auto u = units::si_unit(d);
        if (!u.empty()) out_ << ' ' << u;
        out_ << '\n';
    }
    void integer(std::string_view key, long long v) { out_ << key << " = " << v << '\n'; }
    void boolean(std::string_view key, bool v) { raw(key, v ? "true" : "false"); }
    [[nodiscard]] std::string str() const { return out_.str(); }

private:
    std::ostringstream out_;
};

}  // namespace

std::string emit_scenario(const Scenario& s) {
    Emitter e;
    e.section("scenario");
    e.raw("kind", to_string(s.kind));
    if (!s.out.empty()) e.raw("out", s.out);

    e.section("device");
    for (Param p : kAllParams) {
        if (p == Param::n_depl) continue;
        e.num(param_key(p), get_param(s.device, p), units::param_dimension(p));
    }

    e.section("solver");
    e.num("dt", s.solver.dt, Dimension::time);
    e.num("newton_tol_v", s.solver.newton_tol_v, Dimension::voltage);
    e.num("newton_tol_i", s.solver.newton_tol_i, Dimension::current);
    e.integer("max_newton_iters", s.solver.max_newton_iters);
    e.integer("max_step_halvings", s.solver.max_step_halvings);
    e.num("p_init", s.solver.p_init, Dimension::none);
    e.integer("record_every", s.solver.record_every);
    e.integer("min_segment_steps", s.solver.min_segment_steps);

    e.section("hysteresis");
    e.num("amplitude", s.hysteresis.amplitude, Dimension::voltage);
    e.num("frequency", s.hysteresis.frequency, Dimension::frequency);
    e.integer("cycles", s.hysteresis.cycles);

    e.section("kinetics");
    e.list("amplitudes", s.kinetics.amplitudes, Dimension::voltage);
    e.list("widths", s.kinetics.widths, Dimension::time);
    e.num("preset", s.kinetics.options.preset, Dimension::voltage);
    e.num("preset_width", s.kinetics.options.preset_width, Dimension::time);
    e.num("settle", s.kinetics.options.settle, Dimension::time);
    e.num("edge", s.kinetics.options.edge, Dimension::time);
    e.integer("steps_per_pulse", s.kinetics.options.steps_per_pulse);

    e.section("cv");
    e.num("amplitude", s.cv.amplitude, Dimension::voltage);
    e.num("frequency", s.cv.frequency, Dimension::frequency);
    e.integer("cycles", s.cv.cycles);
    e.num("delta_v", s.cv.delta_v, Dimension::voltage);

    e.section("iv");
    e.num("v_start", s.iv.v_start, Dimension::voltage);
    e.num("v_stop", s.iv.v_stop, Dimension::voltage);
    e.integer("points", s.iv.points);

    e.section("program");
    const auto& t = s.program.train;
    e.num("current", t.pulse_current, Dimension::current);
    e.num("width", t.pulse_width, Dimension::time);
    e.integer("pulses", t.n_pulses);
    e.boolean("discharge", t.discharge_between);
    e.num("max_discharge", t.max_discharge, Dimension::time);
    e.num("threshold", t.discharge_threshold, Dimension::current);
    e.num("edge", t.edge, Dimension::time);
    e.integer("steps_per_pulse", t.steps_per_pulse);
    e.boolean("compare_single", s.program.compare_single);
    e.num("single_current", s.program.single_current, Dimension::current);
    e.num("single_width", s.program.single_width, Dimension::time);

    e.section("transient");
    const auto& w = s.transient;
    const Dimension drive_dim = w.mode == DriveMode::voltage ? Dimension::voltage : Dimension::current;
    e.raw("shape", to_string(w.shape));
    e.raw("mode", to_string(w.mode));
    e.num("amplitude", w.amplitude, drive_dim);
    e.num("frequency", w.frequency, Dimension::frequency);
    e.integer("cycles", w.cycles);
    e.num("width", w.width, Dimension::time);
    e.num("period", w.period, Dimension::time);
    e.integer("count", w.count);
    e.num("edge", w.edge, Dimension::time);
    e.num("delay", w.delay, Dimension::time);
    e.num("tail", w.tail, Dimension::time);
    if (!w.times.empty()) {
        e.list("times", w.times, Dimension::time);
        e.list("values", w.values, drive_dim);
    }

    e.section("mc");
    e.raw("scenario", to_string(s.mc.scenario));
    e.integer("trials", s.mc.trials);
    e.raw("seed", std::to_string(s.mc.seed));
    e.integer("workers", s.mc.workers);
    e.raw("set", s.mc.set);
    // One line per parameter; a repeated parameter keeps its last value.
    std::vector<McEntry> last;
    for (const auto& o : s.mc.overrides) {
        auto it = std::find_if(last.begin(), last.end(), [&](const McEntry& x) { return x.param == o.param; });
        if (it != last.end()) {
            *it = o;
        } else {
            last.push_back(o);
        }
    }
    for (const auto& o : last) {
        const Dimension d = units::param_dimension(o.param);
        std::string v = format_exact(o.mean) + " " + format_exact(o.sigma);
        if (!units::si_unit(d).empty()) v += " " + std::string(units::si_unit(d));
        e.raw(param_key(o.param), v);
    }

    e.section("bench");
    std::string sizes;
    for (auto n : s.bench.sizes) sizes += (sizes.empty() ? "" : " ") + std::to_string(n);
    e.raw("sizes", sizes);
    e.num("current", s.bench.options.pulse_current, Dimension::current);
    e.num("width", s.bench.options.pulse_width, Dimension::time);
    e.num("edge", s.bench.options.edge, Dimension::time);
    e.num("duration", s.bench.options.duration, Dimension::time);
    e.num("dt", s.bench.options.dt, Dimension::time);
    e.integer("workers", s.bench.options.workers);
    return e.str();
}

std::string describe_params(const DeviceParams& d) {
    std::ostringstream out;
    for (Param p : kAllParams) {
        if (p == Param::n_depl) continue;
        const Dimension dim = units::param_dimension(p);
        const auto u = units::display_unit(dim);
        out << param_key(p) << " = " << format_number(units::from_si(get_param(d, p), u, dim));
        if (!u.empty()) out << ' ' << u;
        out << '\n';
    }
    return out.str();
}

std::string describe_distribution(const McDistribution& dist) {
    std::ostringstream out;
    for (const auto& e : dist.entries) {
        const Dimension dim = units::param_dimension(e.param);
        const auto u = units::display_unit(dim);
        // Widths convert without the temperature offset.
        const double scale = units::to_si(1.0, u, dim) - units::to_si(0.0, u, dim);
        out << param_key(e.param) << " = " << format_number(units::from_si(e.mean, u, dim)) << " "
            << format_number(e.sigma / scale);
        if (!u.empty()) out << ' ' << u;
        out << "  [" << format_number(units::from_si(e.lower, u, dim)) << ", "
            << format_number(units::from_si(e.upper, u, dim)) << "]\n";
    }
    return out.str();
}

}  // namespace fecap
