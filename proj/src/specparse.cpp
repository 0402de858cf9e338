#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/cli.hpp"
#include "orlicz/numerics.hpp"

namespace orlicz {
namespace {

[[noreturn]] void fail_at(const std::string& text, std::size_t pos, const std::string& why) {
    std::ostringstream oss;
    oss << "spec '" << text << "': " << why << " at position " << pos;
    throw ParseError(oss.str());
}

struct KeyValue {
    std::string key;
    double value = kNaN;
    std::size_t pos = 0;  // byte offset of the key inside the spec text
};

// comma-separated key=<number> list starting at `start`
std::vector<KeyValue> parse_kv_list(const std::string& text, std::size_t start) {
    std::vector<KeyValue> out;
    std::size_t i = start;
    if (i >= text.size()) fail_at(text, i, "expected key=value parameters");
    while (i < text.size()) {
        const std::size_t key_pos = i;
        const std::size_t eq = text.find('=', i);
        if (eq == std::string::npos || eq == i) fail_at(text, i, "expected key=value");
        std::string key = text.substr(i, eq - i);
        const std::size_t val_pos = eq + 1;
        const std::size_t comma = text.find(',', val_pos);
        const std::size_t val_end = comma == std::string::npos ? text.size() : comma;
        if (val_end == val_pos) fail_at(text, val_pos, "empty value");
        const char* begin = text.c_str() + val_pos;
        char* endp = nullptr;
        const double v = std::strtod(begin, &endp);
        if (endp != text.c_str() + val_end)
            fail_at(text, val_pos + static_cast<std::size_t>(endp - begin), "malformed number");
        out.push_back({std::move(key), v, key_pos});
        i = comma == std::string::npos ? text.size() : comma + 1;
        if (comma != std::string::npos && i >= text.size()) fail_at(text, i, "trailing comma");
    }
    return out;
}

class Params {
public:
    Params(const std::string& text, std::size_t start)
        : text_(text), items_(parse_kv_list(text, start)) {
        used_.assign(items_.size(), false);
    }

    bool has(const std::string& key) const { return find(key) != nullptr; }

    double get(const std::string& key) {
        for (std::size_t k = 0; k < items_.size(); ++k) {
            if (items_[k].key == key) {
                used_[k] = true;
                return items_[k].value;
            }
        }
        fail_at(text_, text_.size(), "missing required parameter '" + key + "'");
    }

    double get_or(const std::string& key, double fallback) {
        return has(key) ? get(key) : fallback;
    }

    [[noreturn]] void fail(const std::string& key, const std::string& why) const {
        const KeyValue* kv = find(key);
        fail_at(text_, kv ? kv->pos : text_.size(), why);
    }

    // every supplied parameter must have been consumed
    void finish() const {
        for (std::size_t k = 0; k < items_.size(); ++k)
            if (!used_[k])
                fail_at(text_, items_[k].pos, "unknown parameter '" + items_[k].key + "'");
    }

private:
    const KeyValue* find(const std::string& key) const {
        for (const KeyValue& kv : items_)
            if (kv.key == key) return &kv;
        return nullptr;
    }

    const std::string& text_;
    std::vector<KeyValue> items_;
    std::vector<bool> used_;
};

// two numeric comma-separated columns; '#' comments and blank lines skipped
std::pair<std::vector<double>, std::vector<double>> load_two_columns(const std::string& path,
                                                                     const char* what) {
    std::ifstream in(path);
    if (!in) throw ParseError(std::string(what) + " file '" + path + "': cannot open");
    std::vector<double> a, b;
    std::string line;
    int lineno = 0;
    auto bad = [&](const std::string& why) -> void {
        std::ostringstream oss;
        oss << what << " file '" << path << "' line " << lineno << ": " << why;
        throw ParseError(oss.str());
    };
    auto cell = [&](std::string s) -> double {
        const std::size_t lo = s.find_first_not_of(" \t");
        const std::size_t hi = s.find_last_not_of(" \t");
        if (lo == std::string::npos) bad("empty field");
        s = s.substr(lo, hi - lo + 1);
        char* endp = nullptr;
        const double v = std::strtod(s.c_str(), &endp);
        if (endp != s.c_str() + s.size()) bad("malformed number '" + s + "'");
        return v;
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) bad("expected two comma-separated numbers");
        if (line.find(',', comma + 1) != std::string::npos) bad("expected exactly two columns");
        a.push_back(cell(line.substr(0, comma)));
        b.push_back(cell(line.substr(comma + 1)));
    }
    if (a.empty()) throw ParseError(std::string(what) + " file '" + path + "': no data rows");
    return {std::move(a), std::move(b)};
}

// family prefix before the first ':'; the rest is family-specific
std::pair<std::string, std::size_t> split_family(const std::string& text) {
    const std::size_t colon = text.find(':');
    if (colon == std::string::npos || colon == 0)
        fail_at(text, 0, "expected '<family>:<parameters>'");
    return {text.substr(0, colon), colon + 1};
}

}  // namespace

YoungFunction parse_young_spec(const std::string& text) {
    const auto [family, rest] = split_family(text);

    if (family == "pow") {
        Params ps(text, rest);
        const double p = ps.get("p");
        if (!(p > 1.0)) ps.fail("p", "exponent p must exceed 1");
        const double c = ps.get_or("c", 1.0);
        if (!(c > 0.0)) ps.fail("c", "coefficient c must be positive");
        ps.finish();
        return YoungFunction::power(p, c);
    }
    if (family == "sumpow") {
        Params ps(text, rest);
        const double p = ps.get("p");
        const double q = ps.get("q");
        if (!(p > 1.0)) ps.fail("p", "exponent p must exceed 1");
        if (!(q > 1.0)) ps.fail("q", "exponent q must exceed 1");
        ps.finish();
        return YoungFunction::sum_power(p, q);
    }
    if (family == "maxpow") {
        Params ps(text, rest);
        const double p = ps.get("p");
        const double q = ps.get("q");
        if (!(p > 1.0)) ps.fail("p", "exponent p must exceed 1");
        if (!(q > 1.0)) ps.fail("q", "exponent q must exceed 1");
        const double cp = ps.get_or("cp", 1.0);
        const double cq = ps.get_or("cq", 1.0);
        if (!(cp > 0.0)) ps.fail("cp", "coefficient cp must be positive");
        if (!(cq > 0.0)) ps.fail("cq", "coefficient cq must be positive");
        ps.finish();
        return YoungFunction::max_power(p, q, cp, cq);
    }
    if (family == "powlog") {
        Params ps(text, rest);
        const double p = ps.get("p");
        if (!(p > 1.0)) ps.fail("p", "exponent p must exceed 1");
        ps.finish();
        return YoungFunction::power_log(p);
    }
    if (family == "table") {
        const std::string path = text.substr(rest);
        if (path.empty()) fail_at(text, rest, "expected a file path");
        auto [t, phi] = load_two_columns(path, "density table");
        try {
            return YoungFunction::tabulated(t, phi, path);
        } catch (const DomainError& err) {
            throw ParseError("density table file '" + path + "': " + err.what());
        }
    }
    fail_at(text, 0, "unknown family '" + family + "'");
}

WeightProfile parse_weight_spec(const std::string& text, int dim, double omega) {
    const auto [family, rest] = split_family(text);

    if (family == "hardy") {
        Params ps(text, rest);
        const double a = ps.get("a");
        if (!(a > 0.0)) ps.fail("a", "exponent a must be positive");
        ps.finish();
        return WeightProfile::radial_power(a, dim, omega);
    }
    if (family == "const") {
        Params ps(text, rest);
        const double c = ps.get("c");
        if (!(c >= 0.0)) ps.fail("c", "value c must be nonnegative");
        const double m = ps.get("m");
        if (!(m > 0.0) || !std::isfinite(m)) ps.fail("m", "measure m must be finite positive");
        ps.finish();
        return WeightProfile::constant(c, m, dim);
    }
    if (family == "indicator") {
        Params ps(text, rest);
        const double m = ps.get("m");
        if (!(m > 0.0) || !std::isfinite(m)) ps.fail("m", "measure m must be finite positive");
        ps.finish();
        return WeightProfile::indicator(m, omega, dim);
    }
    if (family == "sample") {
        const std::string path = text.substr(rest);
        if (path.empty()) fail_at(text, rest, "expected a file path");
        auto [value, measure] = load_two_columns(path, "cell sample");
        std::vector<Cell> cells(value.size());
        for (std::size_t k = 0; k < cells.size(); ++k) cells[k] = {value[k], measure[k]};
        try {
            return WeightProfile::sampled(std::move(cells), omega, path);
        } catch (const DomainError& err) {
            throw ParseError("cell sample file '" + path + "': " + err.what());
        }
    }
    if (family == "radial") {
        const std::string path = text.substr(rest);
        if (path.empty()) fail_at(text, rest, "expected a file path");
        auto [rho, g] = load_two_columns(path, "radial weight");
        try {
            return WeightProfile::radial_table(rho, g, dim, path);
        } catch (const DomainError& err) {
            throw ParseError("radial weight file '" + path + "': " + err.what());
        }
    }
    fail_at(text, 0, "unknown family '" + family + "'");
}

std::vector<double> parse_levels(const std::string& text) {
    auto number = [&](const std::string& s, std::size_t pos) -> double {
        char* endp = nullptr;
        const double v = std::strtod(s.c_str(), &endp);
        if (endp != s.c_str() + s.size() || s.empty())
            fail_at(text, pos, "malformed number '" + s + "'");
        return v;
    };
    const std::size_t c1 = text.find(':');
    if (c1 == std::string::npos) {
        const double r = number(text, 0);
        if (!(r > 0.0) || !std::isfinite(r)) fail_at(text, 0, "level must be finite positive");
        return {r};
    }
    const std::size_t c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) fail_at(text, c1, "expected lo:hi:count");
    if (text.find(':', c2 + 1) != std::string::npos)
        fail_at(text, c2 + 1, "expected lo:hi:count");
    const double lo = number(text.substr(0, c1), 0);
    const double hi = number(text.substr(c1 + 1, c2 - c1 - 1), c1 + 1);
    const double cnt = number(text.substr(c2 + 1), c2 + 1);
    const int n = static_cast<int>(cnt);
    if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi))
        fail_at(text, 0, "sweep needs 0 < lo < hi");
    if (cnt != n || n < 2) fail_at(text, c2 + 1, "sweep count must be an integer of at least 2");
    return logspace(lo, hi, n);
}

}  // namespace orlicz
