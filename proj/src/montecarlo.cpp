#include "fecap/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "fecap/constants.hpp"

namespace fecap {

void McDistribution::validate() const {
    for (const auto& e : entries) {
        const std::string key(param_key(e.param));
        if (!std::isfinite(e.mean) || !std::isfinite(e.sigma) || e.sigma < 0.0) {
            throw std::invalid_argument("mc " + key + ": mean and sigma must be finite, sigma >= 0");
        }
        if (!(e.lower <= e.mean && e.mean <= e.upper)) {
            throw std::invalid_argument("mc " + key + ": bounds must enclose the mean");
        }
        validate_param(e.param, e.lower);
        validate_param(e.param, e.upper);
    }
}

double McDistribution::floor_for(Param p) {
    switch (p) {
    case Param::t_int:
    case Param::t_fe:
        return 0.1e-9;
    case Param::n_depl:
    case Param::n_depl_down:
    case Param::n_depl_up:
        return 1e26;
    case Param::p_sat:
        return 0.01;
    default:
        return 0.0;
    }
}

McEntry McDistribution::make_entry(Param p, double mean, double sigma, double floor) {
    return {p, mean, sigma, std::max(mean - 4.0 * sigma, floor), mean + 4.0 * sigma};
}

namespace {

McDistribution table_set(double q_fix, double d_e, double temperature) {
    McDistribution d;
    auto add = [&](Param p, double mean, double sigma) {
        d.entries.push_back(McDistribution::make_entry(p, mean, sigma, McDistribution::floor_for(p)));
    };
    add(Param::t_int, 1.5e-9, 0.22e-9);
    add(Param::p_sat, 0.27, 0.027);
    add(Param::n_depl, 1.05e28, 2.65e27);
    add(Param::q_fix_depl, q_fix, 0.0);
    add(Param::action_distance, d_e, 0.0);
    add(Param::temperature, temperature, 0.0);
    return d;
}

}  // namespace

McDistribution McDistribution::room_temperature() { return table_set(0.098, 7.5e-9, 294.15); }
McDistribution McDistribution::hot() { return table_set(0.27, 4.5e-9, 358.15); }

double RngStream::uniform() {
    // 53 random bits, shifted by half an ulp so 0 is never returned.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double theta = 2.0 * kPi * uniform();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RngStream trial_stream(std::uint64_t seed, std::uint64_t trial) {
    return RngStream(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x632BE59BD9B4E019ULL)));
}

DeviceParams sample_params(const DeviceParams& base, const McDistribution& dist, RngStream& rng) {
    DeviceParams d = base;
    for (const auto& e : dist.entries) {
        double v = e.mean;
        if (e.sigma > 0.0) {
            bool inside = false;
            for (int k = 0; k < 100 && !inside; ++k) {
                v = e.mean + e.sigma * rng.normal();
                inside = v >= e.lower && v <= e.upper;
            }
            v = std::clamp(v, e.lower, e.upper);
        }
        set_param(d, e.param, v);
    }
    return d;
}

std::string_view to_string(McScenario s) {
    switch (s) {
    case McScenario::hysteresis: return "hysteresis";
    case McScenario::kinetics: return "kinetics";
    case McScenario::program: return "program";
    }
    return "?";
}

namespace {

// Type-7 quantile of sorted data.
double quantile(const std::vector<double>& sorted, double q) {
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= sorted.size()) return sorted.back();
    return sorted[i] + (pos - static_cast<double>(i)) * (sorted[i + 1] - sorted[i]);
}

std::vector<std::string> output_labels(const McSpec& spec) {
    std::vector<std::string> labels;
    switch (spec.scenario) {
    case McScenario::hysteresis:
        labels = {"pr_pos", "pr_neg", "loop_area"};
        break;
    case McScenario::kinetics:
        for (double a : spec.amplitudes) {
            for (double w : spec.widths) {
                std::ostringstream s;
                s << "delta_p A=" << a << " w=" << w;
                labels.push_back(s.str());
            }
        }
        break;
    case McScenario::program:
        for (int k = 1; k <= spec.program.n_pulses; ++k) {
            labels.push_back("P_after_pulse_" + std::to_string(k));
        }
        break;
    }
    return labels;
}

std::vector<double> run_trial(const McSpec& spec, const DeviceParams& params) {
    switch (spec.scenario) {
    case McScenario::hysteresis: {
        const auto h = hysteresis(params, spec.amplitude, spec.frequency, spec.n_cycles, spec.solver);
        return {h.pr_pos, h.pr_neg, h.area};
    }
    case McScenario::kinetics: {
        const auto pts = switching_kinetics(params, spec.amplitudes, spec.widths, spec.solver,
                                            spec.kinetics);
        std::vector<double> out;
        out.reserve(pts.size());
        for (const auto& p : pts) out.push_back(p.delta_p);
        return out;
    }
    case McScenario::program:
        return current_program(params, spec.program, spec.solver).polarization_after_pulse;
    }
    return {};
}

}  // namespace

Histogram freedman_diaconis(std::span<const double> values) {
    Histogram h;
    if (values.empty()) return h;
    std::vector<double> s(values.begin(), values.end());
    std::sort(s.begin(), s.end());
    const double lo = s.front();
    const double hi = s.back();
    const double iqr = quantile(s, 0.75) - quantile(s, 0.25);
    std::size_t bins = 1;
    if (iqr > 0.0 && hi > lo) {
        const double width = 2.0 * iqr / std::cbrt(static_cast<double>(s.size()));
        bins = static_cast<std::size_t>(std::clamp(std::ceil((hi - lo) / width), 1.0, 1000.0));
    }
    h.edges.resize(bins + 1);
    for (std::size_t i = 0; i <= bins; ++i) {
        h.edges[i] = i == bins ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
    }
    h.counts.assign(bins, 0);
    for (double v : s) {
        auto i = hi > lo ? static_cast<std::size_t>((v - lo) / (hi - lo) * static_cast<double>(bins)) : 0;
        ++h.counts[std::min(i, bins - 1)];
    }
    return h;
}

void aggregate(McResult& result) {
    const std::size_t n_out = result.labels.size();
    result.mean.assign(n_out, 0.0);
    result.sigma.assign(n_out, 0.0);
    std::size_t n_ok = 0;
    for (const auto& t : result.trials) {
        if (!t.ok) continue;
        ++n_ok;
        for (std::size_t j = 0; j < n_out; ++j) result.mean[j] += t.outputs[j];
    }
    if (n_ok == 0) return;
    for (auto& m : result.mean) m /= static_cast<double>(n_ok);
    for (const auto& t : result.trials) {
        if (!t.ok) continue;
        for (std::size_t j = 0; j < n_out; ++j) {
            const double d = t.outputs[j] - result.mean[j];
            result.sigma[j] += d * d;
        }
    }
    for (auto& s : result.sigma) s = std::sqrt(s / static_cast<double>(n_ok));
}

McResult run_mc(const McSpec& spec, const DeviceParams& base, const McDistribution& dist) {
    if (spec.n_trials < 1) throw std::invalid_argument("mc: n_trials must be >= 1");
    if (spec.workers < 1) throw std::invalid_argument("mc: workers must be >= 1");
    dist.validate();
    spec.solver.validate();

    McResult res;
    res.spec = spec;
    res.labels = output_labels(spec);
    res.trials.resize(static_cast<std::size_t>(spec.n_trials));

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < res.trials.size(); i = next++) {
            auto& t = res.trials[i];
            t.index = i;
            auto rng = trial_stream(spec.seed, i);
            t.params = sample_params(base, dist, rng);
            try {
                t.outputs = run_trial(spec, t.params);
                t.ok = t.outputs.size() == res.labels.size();
                if (!t.ok) t.error = "unexpected output count";
            } catch (const std::exception& e) {
                t.error = e.what();
            }
        }
    };
    const int n_threads = std::min(spec.workers, spec.n_trials);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int k = 0; k < n_threads; ++k) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (const auto& t : res.trials) res.failures += t.ok ? 0 : 1;
    if (10 * res.failures > res.trials.size()) {
        std::ostringstream msg;
        msg << "mc: " << res.failures << " of " << res.trials.size() << " trials failed";
        for (const auto& t : res.trials) {
            if (!t.ok) {
                msg << " (first: trial " << t.index << ": " << t.error << ")";
                break;
            }
        }
        throw McError(msg.str());
    }
    aggregate(res);
    if (spec.scenario == McScenario::hysteresis) {
        std::vector<double> pr;
        for (const auto& t : res.trials) {
            if (t.ok) pr.push_back(t.outputs[0]);
        }
        res.histogram = freedman_diaconis(pr);
    }
    return res;
}

}  // namespace fecap
