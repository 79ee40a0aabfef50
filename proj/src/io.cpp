#include "coulombgap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace coulombgap {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

Config Config::parse_string(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": empty key");
        cfg.values_[key] = value;
    }
    return cfg;
}

bool Config::has(const std::string& key) const {
    return values_.count(key) != 0;
}

std::string Config::get_string(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError("missing config key: " + key);
    return it->second;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
    return has(key) ? get_string(key) : fallback;
}

double Config::get_double(const std::string& key) const {
    const std::string v = get_string(key);
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config key " + key + ": not a number: " + v);
    }
}

double Config::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long Config::get_int(const std::string& key) const {
    const double d = get_double(key);
    const long l = std::lround(d);
    if (d != static_cast<double>(l))
        throw ConfigError("config key " + key + ": not an integer");
    return l;
}

long Config::get_int(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

std::vector<double> Config::get_list(const std::string& key) const {
    std::string v = get_string(key);
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
        throw ConfigError("config key " + key + ": expected [a, b, ...]");
    v = v.substr(1, v.size() - 2);
    std::vector<double> out;
    std::istringstream in(v);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("config key " + key + ": bad list item: " + item);
        }
    }
    if (out.empty()) throw ConfigError("config key " + key + ": empty list");
    return out;
}

void Config::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

RadialPotential potential_from_config(const Config& cfg) {
    return RadialPotential(cfg.get_list("potential.coeffs"));
}

RadialTestFunction lambda_from_config(const Config& cfg) {
    const std::string kind = cfg.get_string("lambda.kind", "zero");
    if (kind == "zero") return RadialTestFunction::zero();
    const std::vector<double> supp = cfg.get_list("lambda.support");
    if (supp.size() != 2)
        throw ConfigError("lambda.support must be [r_lo, r_hi]");
    const double amp = cfg.get_double("lambda.amplitude", 1.0);
    if (kind == "bump")
        return RadialTestFunction::bump(supp[0], supp[1], amp);
    if (kind == "plateau") {
        const std::vector<double> pl = cfg.get_list("lambda.plateau");
        if (pl.size() != 2)
            throw ConfigError("lambda.plateau must be [p_lo, p_hi]");
        return RadialTestFunction::plateau(supp[0], pl[0], pl[1], supp[1], amp);
    }
    throw ConfigError("lambda.kind must be bump, plateau or zero");
}

CsvWriter::CsvWriter(std::string path, std::vector<std::string> columns)
    : path_(std::move(path)), n_cols_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += columns[i];
    }
    buffer_ += '\n';
}

CsvWriter::~CsvWriter() {
    try {
        close();
    } catch (...) {
    }
}

std::string CsvWriter::format(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::add_row(const std::vector<double>& values) {
    if (values.size() != n_cols_)
        throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += format(values[i]);
    }
    buffer_ += '\n';
}

void CsvWriter::add_row_mixed(const std::vector<std::string>& cells) {
    if (cells.size() != n_cols_)
        throw std::invalid_argument("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void CsvWriter::close() {
    if (closed_) return;
    closed_ = true;
    const std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("CsvWriter: cannot write " + tmp);
        out << buffer_;
        if (!out) throw std::runtime_error("CsvWriter: write failed " + tmp);
    }
    std::filesystem::rename(tmp, path_);
}

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<SvgSeries>& series) {
    const int W = 720, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series) {
        for (double x : s.x) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
        }
        for (double y : s.y) {
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmax > xmin)) xmax = xmin + 1.0;
    if (!(ymax > ymin)) ymax = ymin + 1.0;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;
    auto X = [&](double x) {
        return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr);
    };
    auto Y = [&](double y) {
        return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
    };

    static const char* colors[] = {"#1f6fb2", "#c0392b", "#27ae60", "#8e44ad"};
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-size=\"16\">" << title << "</text>\n";
    // axes
    s << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
      << "\" y2=\"" << H - mb << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel
      << "</text>\n";
    s << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 "
         "18 "
      << (mt + H - mb) / 2 << ")\">" << ylabel << "</text>\n";
    // tick labels at the corners of the data range
    char lab[40];
    std::snprintf(lab, sizeof(lab), "%.4g", xmin);
    s << "<text x=\"" << ml << "\" y=\"" << H - mb + 18
      << "\" font-size=\"11\">" << lab << "</text>\n";
    std::snprintf(lab, sizeof(lab), "%.4g", xmax);
    s << "<text x=\"" << W - mr << "\" y=\"" << H - mb + 18
      << "\" text-anchor=\"end\" font-size=\"11\">" << lab << "</text>\n";
    std::snprintf(lab, sizeof(lab), "%.4g", ymin);
    s << "<text x=\"" << ml - 6 << "\" y=\"" << H - mb
      << "\" text-anchor=\"end\" font-size=\"11\">" << lab << "</text>\n";
    std::snprintf(lab, sizeof(lab), "%.4g", ymax);
    s << "<text x=\"" << ml - 6 << "\" y=\"" << mt + 4
      << "\" text-anchor=\"end\" font-size=\"11\">" << lab << "</text>\n";

    int ci = 0;
    for (const auto& sr : series) {
        const char* color = colors[ci % 4];
        s << "<polyline fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < sr.x.size(); ++i)
            s << X(sr.x[i]) << ',' << Y(sr.y[i]) << ' ';
        s << "\"/>\n";
        s << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 + 16 * ci
          << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << color
          << "\">" << sr.label << "</text>\n";
        ++ci;
    }
    s << "</svg>\n";

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("write_svg_plot: cannot write " + tmp);
        out << s.str();
    }
    std::filesystem::rename(tmp, path);
}

std::vector<double> parse_grid(const std::string& spec) {
    const auto c1 = spec.find(':');
    const auto c2 = spec.find(':', c1 == std::string::npos ? 0 : c1 + 1);
    try {
        if (c1 == std::string::npos) return {std::stod(spec)};
        if (c2 == std::string::npos)
            throw ConfigError("grid must be a:b:step or a single value");
        const double a = std::stod(spec.substr(0, c1));
        const double b = std::stod(spec.substr(c1 + 1, c2 - c1 - 1));
        const double step = std::stod(spec.substr(c2 + 1));
        if (!(step > 0.0) || b < a)
            throw ConfigError("grid must have step > 0 and b >= a");
        std::vector<double> out;
        for (double t = a; t <= b + 1e-12 * std::max(1.0, std::fabs(b));
             t += step)
            out.push_back(t);
        return out;
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception&) {
        throw ConfigError("bad grid specification: " + spec);
    }
}

}  // namespace coulombgap
