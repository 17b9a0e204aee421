#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fecap/analyses.hpp"
#include "fecap/array_bench.hpp"
#include "fecap/dc_cv.hpp"
#include "fecap/montecarlo.hpp"
#include "fecap/solver.hpp"

namespace fecap {

/// Locale-independent general format with `digits` significant digits; the
/// default keeps a re-read within 1e-9 relative.
std::string format_number(double v, int digits = 10);
/// Shortest text that parses back to exactly `v`.
std::string format_exact(double v);
/// Locale-independent parse of the whole token; throws std::invalid_argument.
double parse_number(std::string_view token);

class IoError : public std::runtime_error {
public:
    IoError(const std::filesystem::path& path, const std::string& what)
        : std::runtime_error(path.string() + ": " + what), path_(path) {}
    [[nodiscard]] const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Column index by header name; throws std::out_of_range.
    [[nodiscard]] std::size_t column(std::string_view name) const;
};

void write_csv(const CsvTable& table, const std::filesystem::path& path);
/// Plain comma splitting (no quoting is ever emitted). Throws IoError.
CsvTable read_csv(const std::filesystem::path& path);

CsvTable to_table(const TimeSeries& ts);
CsvTable loop_table(const HysteresisResult& h);
CsvTable hysteresis_summary_table(std::span<const HysteresisResult> runs, std::span<const double> amplitudes);
CsvTable to_table(std::span<const KineticsPoint> points);
CsvTable to_table(std::span<const CvPoint> points);
CsvTable to_table(std::span<const DcPoint> points);
CsvTable program_table(const ProgramTrace& trace);
CsvTable mc_trials_table(const McResult& r);
CsvTable mc_aggregate_table(const McResult& r);
CsvTable mc_params_table(const McResult& r);
CsvTable to_table(const Histogram& h);
CsvTable to_table(const BenchReport& r);

template <class T>
void write_csv(const T& result, const std::filesystem::path& path) {
    write_csv(to_table(result), path);
}

}  // namespace fecap
