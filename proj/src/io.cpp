#include "bohrlab/io.hpp"

#include "bohrlab/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace bohrlab {

std::int64_t toml_value::as_int() const
{
    if (auto* p = std::get_if<std::int64_t>(&v)) return *p;
    throw config_error("toml: expected integer");
}

double toml_value::as_double() const
{
    if (auto* p = std::get_if<double>(&v)) return *p;
    if (auto* p = std::get_if<std::int64_t>(&v)) return static_cast<double>(*p);
    throw config_error("toml: expected number");
}

bool toml_value::as_bool() const
{
    if (auto* p = std::get_if<bool>(&v)) return *p;
    throw config_error("toml: expected boolean");
}

const std::string& toml_value::as_string() const
{
    if (auto* p = std::get_if<std::string>(&v)) return *p;
    throw config_error("toml: expected string");
}

namespace {
template <typename T>
bool is_empty_array(const decltype(toml_value::v)& v)
{
    if (auto* p = std::get_if<std::vector<T>>(&v)) return p->empty();
    return false;
}
bool any_empty_array(const decltype(toml_value::v)& v)
{
    return is_empty_array<std::int64_t>(v) || is_empty_array<double>(v) ||
           is_empty_array<std::string>(v);
}
} // namespace

std::vector<std::int64_t> toml_value::as_int_array() const
{
    if (auto* p = std::get_if<std::vector<std::int64_t>>(&v)) return *p;
    if (auto* p = std::get_if<std::int64_t>(&v)) return {*p};
    if (any_empty_array(v)) return {};
    throw config_error("toml: expected integer array");
}

std::vector<double> toml_value::as_double_array() const
{
    if (auto* p = std::get_if<std::vector<double>>(&v)) return *p;
    if (auto* p = std::get_if<std::vector<std::int64_t>>(&v)) {
        std::vector<double> out(p->begin(), p->end());
        return out;
    }
    if (auto* p = std::get_if<double>(&v)) return {*p};
    if (auto* p = std::get_if<std::int64_t>(&v)) return {static_cast<double>(*p)};
    if (any_empty_array(v)) return {};
    throw config_error("toml: expected number array");
}

std::vector<std::string> toml_value::as_string_array() const
{
    if (auto* p = std::get_if<std::vector<std::string>>(&v)) return *p;
    if (auto* p = std::get_if<std::string>(&v)) return {*p};
    if (any_empty_array(v)) return {};
    throw config_error("toml: expected string array");
}

namespace {

std::string trim(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

toml_value parse_scalar(const std::string& text)
{
    std::string t = trim(text);
    if (t.empty()) throw config_error("toml: empty value");
    if (t == "true") return {true};
    if (t == "false") return {false};
    if (t.front() == '"') {
        if (t.size() < 2 || t.back() != '"') throw config_error("toml: unterminated string");
        return {t.substr(1, t.size() - 2)};
    }
    bool floaty = t.find('.') != std::string::npos || t.find('e') != std::string::npos ||
                  t.find('E') != std::string::npos;
    try {
        if (floaty) return {std::stod(t)};
        return {static_cast<std::int64_t>(std::stoll(t))};
    } catch (const std::exception&) {
        throw config_error("toml: cannot parse value '" + t + "'");
    }
}

toml_value parse_array(const std::string& inner)
{
    std::vector<std::string> parts;
    std::string cur;
    bool in_str = false;
    for (char ch : inner) {
        if (ch == '"') in_str = !in_str;
        if (ch == ',' && !in_str) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!trim(cur).empty()) parts.push_back(cur);
    if (parts.empty()) return {std::vector<std::int64_t>{}};

    std::vector<toml_value> vals;
    for (auto& p : parts) vals.push_back(parse_scalar(p));
    if (std::holds_alternative<std::string>(vals[0].v)) {
        std::vector<std::string> out;
        for (auto& x : vals) out.push_back(x.as_string());
        return {out};
    }
    bool any_float = std::any_of(vals.begin(), vals.end(), [](const toml_value& x) {
        return std::holds_alternative<double>(x.v);
    });
    if (any_float) {
        std::vector<double> out;
        for (auto& x : vals) out.push_back(x.as_double());
        return {out};
    }
    std::vector<std::int64_t> out;
    for (auto& x : vals) out.push_back(x.as_int());
    return {out};
}

} // namespace

toml_table toml_table::parse(const std::string& text)
{
    toml_table t;
    std::istringstream is(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            // keep # inside strings
            bool in_str = false;
            for (std::size_t i = 0; i < line.size(); ++i) {
                if (line[i] == '"') in_str = !in_str;
                if (line[i] == '#' && !in_str) { line = line.substr(0, i); break; }
            }
        }
        std::string s = trim(line);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') throw config_error("toml: bad table header, line " +
                                                    std::to_string(lineno));
            section = trim(s.substr(1, s.size() - 2));
            continue;
        }
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw config_error("toml: missing '=', line " + std::to_string(lineno));
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw config_error("toml: empty key, line " + std::to_string(lineno));
        std::string full = section.empty() ? key : section + "." + key;
        if (!val.empty() && val.front() == '[') {
            if (val.back() != ']') throw config_error("toml: unterminated array, line " +
                                                      std::to_string(lineno));
            t.values_[full] = parse_array(val.substr(1, val.size() - 2));
        } else {
            t.values_[full] = parse_scalar(val);
        }
    }
    return t;
}

toml_table toml_table::parse_file(const std::string& path)
{
    std::ifstream f(path);
    if (!f) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

const toml_value& toml_table::at(const std::string& key) const
{
    auto it = values_.find(key);
    if (it == values_.end()) throw config_error("missing config key: " + key);
    read_[key] = true;
    return it->second;
}

std::int64_t toml_table::get_int(const std::string& key, std::int64_t fallback) const
{
    if (!has(key)) return fallback;
    return at(key).as_int();
}

double toml_table::get_double(const std::string& key, double fallback) const
{
    if (!has(key)) return fallback;
    return at(key).as_double();
}

bool toml_table::get_bool(const std::string& key, bool fallback) const
{
    if (!has(key)) return fallback;
    return at(key).as_bool();
}

std::string toml_table::get_string(const std::string& key, const std::string& fallback) const
{
    if (!has(key)) return fallback;
    return at(key).as_string();
}

std::vector<std::string> toml_table::unread_keys() const
{
    std::vector<std::string> out;
    for (const auto& [k, v] : values_)
        if (!read_.count(k)) out.push_back(k);
    return out;
}

std::string fmt_g17(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string toml_table::emit() const
{
    std::ostringstream os;
    for (const auto& [k, val] : values_) {
        os << k << " = ";
        std::visit(
            [&](const auto& x) {
                using T = std::decay_t<decltype(x)>;
                if constexpr (std::is_same_v<T, std::int64_t>) os << x;
                else if constexpr (std::is_same_v<T, double>) os << fmt_g17(x);
                else if constexpr (std::is_same_v<T, bool>) os << (x ? "true" : "false");
                else if constexpr (std::is_same_v<T, std::string>) os << '"' << x << '"';
                else {
                    os << '[';
                    for (std::size_t i = 0; i < x.size(); ++i) {
                        if (i) os << ", ";
                        if constexpr (std::is_same_v<T, std::vector<std::string>>)
                            os << '"' << x[i] << '"';
                        else if constexpr (std::is_same_v<T, std::vector<double>>)
                            os << fmt_g17(x[i]);
                        else
                            os << x[i];
                    }
                    os << ']';
                }
            },
            val.v);
        os << '\n';
    }
    return os.str();
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

void write_svg_plot(std::ostream& os, const std::string& title,
                    const std::vector<svg_series>& series)
{
    const double w = 720, h = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    for (const auto& s : series) {
        for (auto [x, y] : s.points) {
            if (first) { xmin = xmax = x; ymin = ymax = y; first = false; }
            xmin = std::min(xmin, x); xmax = std::max(xmax, x);
            ymin = std::min(ymin, y); ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
       << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << w / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
       << title << "</text>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
       << h - mb << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
       << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        double x = xmin + (xmax - xmin) * i / 4.0;
        double y = ymin + (ymax - ymin) * i / 4.0;
        os << "<text x=\"" << px(x) << "\" y=\"" << h - mb + 18
           << "\" text-anchor=\"middle\" font-size=\"11\">" << x << "</text>\n";
        os << "<text x=\"" << ml - 8 << "\" y=\"" << py(y) + 4
           << "\" text-anchor=\"end\" font-size=\"11\">" << y << "</text>\n";
    }
    int ci = 0;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[ci % 5] << "\" stroke-width=\"1.5\" points=\"";
        for (auto [x, y] : s.points) os << px(x) << ',' << py(y) << ' ';
        os << "\"/>\n";
        os << "<text x=\"" << w - mr - 6 << "\" y=\"" << mt + 16 * (ci + 1)
           << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << colors[ci % 5] << "\">"
           << s.name << "</text>\n";
        ++ci;
    }
    os << "</svg>\n";
}

} // namespace bohrlab
