#include "fecap/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>

namespace fecap {

std::string format_number(double v, int digits) {
    if (std::isnan(v)) return "nan";
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, digits);
    return ec == std::errc{} ? std::string(buf.data(), end) : std::string("nan");
}

std::string format_exact(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return ec == std::errc{} ? std::string(buf.data(), end) : std::string("nan");
}

double parse_number(std::string_view token) {
    std::string_view t = token;
    if (!t.empty() && t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
        throw std::invalid_argument("not a number: '" + std::string(token) + "'");
    }
    return v;
}

std::size_t CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::out_of_range("no column '" + std::string(name) + "'");
}

void write_csv(const CsvTable& table, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError(path, "cannot open for writing");
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) f << ',';
            f << cells[i];
        }
        f << '\n';
    };
    line(table.header);
    for (const auto& r : table.rows) line(r);
    f.flush();
    if (!f) throw IoError(path, "write failed");
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError(path, "cannot open for reading");
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const auto comma = s.find(',', start);
            cells.push_back(s.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        return cells;
    };
    CsvTable t;
    std::string s;
    if (!std::getline(f, s)) throw IoError(path, "empty file");
    t.header = split(s);
    while (std::getline(f, s)) {
        if (!s.empty()) t.rows.push_back(split(s));
    }
    return t;
}

namespace {

std::vector<std::string> numbers(std::initializer_list<double> values) {
    std::vector<std::string> out;
    out.reserve(values.size());
    for (double v : values) out.push_back(format_number(v));
    return out;
}

constexpr double kToUcCm2 = 100.0;   // C/m^2 -> uC/cm^2
constexpr double kToPerCm2 = 1e-4;   // 1/m^2 -> 1/cm^2

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string("nan"); }

}  // namespace

CsvTable to_table(const TimeSeries& ts) {
    CsvTable t;
    t.header = {"t_s", "V_appl_V", "I_A", "p", "P_uC_cm2", "V_fe_V", "V_int_V", "phi_depl_V",
                "J_pf_A_cm2", "J_fn_A_cm2"};
    t.rows.reserve(ts.rows.size());
    for (const auto& r : ts.rows) {
        t.rows.push_back(numbers({r.t, r.v_appl, r.i_terminal, r.p, r.polarization * kToUcCm2, r.v_fe,
                                  r.v_int, r.phi_depl, r.j_pf * kToPerCm2, r.j_fn * kToPerCm2}));
    }
    return t;
}

CsvTable loop_table(const HysteresisResult& h) {
    CsvTable t;
    t.header = {"V_appl_V", "P_uC_cm2", "I_A"};
    for (std::size_t i = 0; i < h.loop.size(); ++i) {
        const double current = i < h.displacement_current.size() ? h.displacement_current[i].second : 0.0;
        t.rows.push_back(numbers({h.loop[i].v, h.loop[i].p * kToUcCm2, current}));
    }
    return t;
}

CsvTable hysteresis_summary_table(std::span<const HysteresisResult> runs, std::span<const double> amplitudes) {
    CsvTable t;
    t.header = {"amplitude_V", "Pr_pos_uC_cm2", "Pr_neg_uC_cm2", "Vc_pos_V", "Vc_neg_V",
                "loop_area_uJ_cm2", "closure_rms"};
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& h = runs[i];
        t.rows.push_back({format_number(i < amplitudes.size() ? amplitudes[i] : std::nan("")),
                          format_number(h.pr_pos * kToUcCm2), format_number(h.pr_neg * kToUcCm2),
                          opt(h.vc_pos), opt(h.vc_neg), format_number(h.area * kToUcCm2),
                          format_number(h.closure_rms)});
    }
    return t;
}

CsvTable to_table(std::span<const KineticsPoint> points) {
    CsvTable t;
    t.header = {"amplitude_V", "width_s", "delta_P_uC_cm2"};
    for (const auto& p : points) {
        t.rows.push_back(numbers({p.pulse_amplitude, p.pulse_width, p.delta_p * kToUcCm2}));
    }
    return t;
}

CsvTable to_table(std::span<const CvPoint> points) {
    CsvTable t;
    t.header = {"t_s", "V_bias_V", "C_F"};
    for (const auto& p : points) t.rows.push_back(numbers({p.t, p.v_bias, p.c}));
    return t;
}

CsvTable to_table(std::span<const DcPoint> points) {
    CsvTable t;
    t.header = {"V_V", "I_A", "V_fe_V", "V_int_V", "p"};
    for (const auto& p : points) t.rows.push_back(numbers({p.v, p.i, p.v_fe, p.v_int, p.p}));
    return t;
}

CsvTable program_table(const ProgramTrace& trace) {
    CsvTable t;
    t.header = {"pulse", "P_after_pulse_uC_cm2", "P_after_discharge_uC_cm2", "V_peak_V", "discharge_s"};
    for (std::size_t k = 0; k < trace.polarization_after_pulse.size(); ++k) {
        const bool dis = k < trace.polarization_after_discharge.size();
        t.rows.push_back({std::to_string(k + 1),
                          format_number(trace.polarization_after_pulse[k] * kToUcCm2),
                          dis ? format_number(trace.polarization_after_discharge[k] * kToUcCm2) : "nan",
                          format_number(trace.peak_voltage[k]),
                          dis ? format_number(trace.discharge_time[k]) : "nan"});
    }
    return t;
}

CsvTable mc_trials_table(const McResult& r) {
    CsvTable t;
    t.header = {"trial", "ok"};
    for (const auto& l : r.labels) t.header.push_back(l);
    for (const auto& tr : r.trials) {
        std::vector<std::string> row{std::to_string(tr.index), tr.ok ? "1" : "0"};
        for (std::size_t j = 0; j < r.labels.size(); ++j) {
            row.push_back(tr.ok ? format_number(tr.outputs[j]) : "nan");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable mc_aggregate_table(const McResult& r) {
    CsvTable t;
    t.header = {"index", "output", "mean_SI", "sigma_SI"};
    for (std::size_t j = 0; j < r.labels.size(); ++j) {
        t.rows.push_back({std::to_string(j), r.labels[j], format_number(r.mean[j]), format_number(r.sigma[j])});
    }
    return t;
}

CsvTable mc_params_table(const McResult& r) {
    CsvTable t;
    t.header = {"trial"};
    std::vector<Param> cols;
    for (Param p : kAllParams) {
        if (p == Param::n_depl) continue;
        cols.push_back(p);
        t.header.push_back(std::string(param_key(p)) + "_SI");
    }
    for (const auto& tr : r.trials) {
        std::vector<std::string> row{std::to_string(tr.index)};
        for (Param p : cols) row.push_back(format_number(get_param(tr.params, p)));
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable to_table(const Histogram& h) {
    CsvTable t;
    t.header = {"bin_lo", "bin_hi", "count"};
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        t.rows.push_back({format_number(h.edges[i]), format_number(h.edges[i + 1]), std::to_string(h.counts[i])});
    }
    return t;
}

CsvTable to_table(const BenchReport& r) {
    CsvTable t;
    t.header = {"n_devices", "wall_s", "wall_per_device_s", "steps_per_device", "steps_total",
                "newton_iterations", "halvings", "failures"};
    for (const auto& row : r.rows) {
        t.rows.push_back({std::to_string(row.n_devices), format_number(row.wall_seconds),
                          format_number(row.wall_seconds / static_cast<double>(row.n_devices)),
                          std::to_string(row.steps_per_device), std::to_string(row.steps_total),
                          std::to_string(row.newton_iterations), std::to_string(row.halvings),
                          std::to_string(row.failures)});
    }
    return t;
}

}  // namespace fecap
