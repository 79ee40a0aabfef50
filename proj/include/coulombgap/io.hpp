#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "coulombgap/potential.hpp"

namespace coulombgap {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Flat key = value configuration with dotted section names, e.g.
//   potential.coeffs = [1.8, -0.8, 0.1]
//   lambda.kind = bump
// '#' starts a comment; lists are bracketed and comma-separated.
class Config {
public:
    static Config parse_file(const std::string& path);
    static Config parse_string(const std::string& text);

    bool has(const std::string& key) const;
    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key,
                           const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    std::vector<double> get_list(const std::string& key) const;

    void set(const std::string& key, const std::string& value);

private:
    std::map<std::string, std::string> values_;
};

// potential.coeffs -> RadialPotential.
RadialPotential potential_from_config(const Config& cfg);

// lambda.kind = bump|plateau|zero, lambda.support = [lo, hi],
// lambda.amplitude, lambda.plateau = [p_lo, p_hi].
RadialTestFunction lambda_from_config(const Config& cfg);

// CSV with 17-significant-digit numeric formatting, written to a temporary
// file and renamed into place on close.
class CsvWriter {
public:
    CsvWriter(std::string path, std::vector<std::string> columns);
    ~CsvWriter();

    void add_row(const std::vector<double>& values);
    void add_row_mixed(const std::vector<std::string>& cells);
    void close();  // atomic rename; called by the destructor if needed

    static std::string format(double v);

private:
    std::string path_;
    std::string buffer_;
    std::size_t n_cols_;
    bool closed_ = false;
};

struct SvgSeries {
    std::string label;
    std::vector<double> x, y;
};

// Polyline plot with axes and labels; purely a re-rendering of the data.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<SvgSeries>& series);

// Grid specification "a:b:step" -> inclusive grid.
std::vector<double> parse_grid(const std::string& spec);

}  // namespace coulombgap
