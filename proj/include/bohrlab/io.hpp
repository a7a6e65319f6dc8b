#ifndef BOHRLAB_IO_HPP
#define BOHRLAB_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace bohrlab {

// Minimal TOML subset for scenario configs: flat tables, scalar values
// (integer, float, boolean, string) and arrays of scalars.  Keys inside a
// [table] are addressed as "table.key".
struct toml_value {
    std::variant<std::int64_t, double, bool, std::string,
                 std::vector<std::int64_t>, std::vector<double>,
                 std::vector<std::string>> v;

    std::int64_t as_int() const;
    double as_double() const; // accepts integer values too
    bool as_bool() const;
    const std::string& as_string() const;
    std::vector<std::int64_t> as_int_array() const;
    std::vector<double> as_double_array() const;
    std::vector<std::string> as_string_array() const;
};

class toml_table {
public:
    static toml_table parse(const std::string& text);
    static toml_table parse_file(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) > 0; }
    const toml_value& at(const std::string& key) const;

    std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;

    void set(const std::string& key, toml_value v) { values_[key] = std::move(v); }
    const std::map<std::string, toml_value>& entries() const { return values_; }

    // keys actually read through the getters; unknown-key detection
    std::vector<std::string> unread_keys() const;

    std::string emit() const; // round-trippable text

private:
    std::map<std::string, toml_value> values_;
    mutable std::map<std::string, bool> read_;
};

// full-precision numeric formatting for diff-stable reports
std::string fmt_g17(double v);

void write_csv_row(std::ostream& os, const std::vector<std::string>& cells);

// Single-polyline SVG plot with axes and tick labels.
struct svg_series {
    std::string name;
    std::vector<std::pair<double, double>> points;
};
void write_svg_plot(std::ostream& os, const std::string& title,
                    const std::vector<svg_series>& series);

} // namespace bohrlab

#endif
