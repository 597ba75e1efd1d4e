#include "gnvar/scenario.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace gnvar {

namespace {

struct Value {
    enum class Kind { Number, String, Array } kind;
    double number = 0;
    std::string str;
    std::vector<Value> items;
};

// minimal TOML-style reader: sections, key = value, values are numbers,
// quoted strings or (possibly multi-line) arrays of those
class TableParser {
public:
    explicit TableParser(const std::string& text) : text_(text) {}

    std::map<std::string, Value> parse() {
        std::map<std::string, Value> out;
        std::string section;
        std::istringstream in(text_);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            strip_comment(line);
            std::string t = trim(line);
            if (t.empty()) continue;
            if (t.front() == '[') {
                if (t.back() != ']')
                    throw ScenarioError("malformed section header at line " +
                                        std::to_string(lineno));
                section = trim(t.substr(1, t.size() - 2));
                continue;
            }
            auto eq = t.find('=');
            if (eq == std::string::npos)
                throw ScenarioError("expected key = value at line " + std::to_string(lineno));
            std::string key = trim(t.substr(0, eq));
            std::string rest = trim(t.substr(eq + 1));
            // gather continuation lines for unbalanced arrays
            while (bracket_balance(rest) > 0) {
                std::string more;
                if (!std::getline(in, more))
                    throw ScenarioError("unterminated array for key '" + key + "'");
                ++lineno;
                strip_comment(more);
                rest += " " + trim(more);
            }
            std::string full = section.empty() ? key : section + "." + key;
            out[full] = parse_value(rest, full);
        }
        return out;
    }

private:
    static void strip_comment(std::string& s) {
        bool in_str = false;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '"') in_str = !in_str;
            if (s[i] == '#' && !in_str) {
                s.erase(i);
                return;
            }
        }
    }
    static std::string trim(const std::string& s) {
        std::size_t b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return "";
        std::size_t e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }
    static int bracket_balance(const std::string& s) {
        int depth = 0;
        bool in_str = false;
        for (char c : s) {
            if (c == '"') in_str = !in_str;
            if (in_str) continue;
            if (c == '[') ++depth;
            if (c == ']') --depth;
        }
        return depth;
    }

    Value parse_value(const std::string& s, const std::string& key) {
        std::string t = trim(s);
        if (t.empty()) throw ScenarioError("empty value for key '" + key + "'");
        if (t.front() == '"') {
            if (t.size() < 2 || t.back() != '"')
                throw ScenarioError("unterminated string for key '" + key + "'");
            return {Value::Kind::String, 0, t.substr(1, t.size() - 2), {}};
        }
        if (t.front() == '[') {
            if (t.back() != ']') throw ScenarioError("unterminated array for key '" + key + "'");
            Value v{Value::Kind::Array, 0, "", {}};
            std::string body = t.substr(1, t.size() - 2);
            std::vector<std::string> parts;
            std::string cur;
            bool in_str = false;
            int depth = 0;
            for (char c : body) {
                if (c == '"') in_str = !in_str;
                if (!in_str) {
                    if (c == '[') ++depth;
                    if (c == ']') --depth;
                    if (c == ',' && depth == 0) {
                        parts.push_back(cur);
                        cur.clear();
                        continue;
                    }
                }
                cur += c;
            }
            if (!trim(cur).empty()) parts.push_back(cur);
            for (const auto& p : parts) v.items.push_back(parse_value(p, key));
            return v;
        }
        try {
            std::size_t used = 0;
            double d = std::stod(t, &used);
            if (used != t.size())
                throw ScenarioError("malformed number '" + t + "' for key '" + key + "'");
            return {Value::Kind::Number, d, "", {}};
        } catch (const std::invalid_argument&) {
            throw ScenarioError("malformed value '" + t + "' for key '" + key + "'");
        }
    }

    const std::string& text_;
};

std::vector<std::string> string_array(const std::map<std::string, Value>& kv,
                                      const std::string& key, std::size_t expect) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ScenarioError("missing required key '" + key + "'");
    if (it->second.kind != Value::Kind::Array)
        throw ScenarioError("key '" + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& v : it->second.items) {
        if (v.kind != Value::Kind::String)
            throw ScenarioError("key '" + key + "' must hold strings");
        out.push_back(v.str);
    }
    if (expect && out.size() != expect)
        throw ScenarioError("key '" + key + "' needs " + std::to_string(expect) +
                            " entries, got " + std::to_string(out.size()));
    return out;
}

Expr parse_field_expr(const std::string& src, const std::string& key, int index) {
    try {
        return parse_expression(src);
    } catch (const ParseError& pe) {
        throw ScenarioError("bad expression in '" + key + "[" + std::to_string(index) +
                            "]': " + pe.what());
    }
}

Scenario from_table(const std::map<std::string, Value>& kv, const std::string& raw) {
    Scenario sc;
    sc.source_text = raw;
    if (auto it = kv.find("name"); it != kv.end() && it->second.kind == Value::Kind::String)
        sc.name = it->second.str;

    // constants
    for (const auto& [k, v] : kv) {
        if (k.rfind("constants.", 0) != 0) continue;
        if (v.kind != Value::Kind::Number)
            throw ScenarioError("constant '" + k + "' must be a number");
        std::string name = k.substr(10);
        if (name == "k")
            sc.fields.k = v.number;
        else if (name == "alpha")
            sc.fields.alpha = v.number;
        else if (name == "m")
            sc.fields.m = v.number;
        sc.fields.consts[name] = v.number;
    }

    auto theta = string_array(kv, "fields.theta", 16);
    auto omega = string_array(kv, "fields.omega", 24);
    auto psi = string_array(kv, "fields.psi", 8);
    for (int i = 0; i < 16; ++i) sc.fields.theta[i] = parse_field_expr(theta[i], "fields.theta", i);
    for (int i = 0; i < 24; ++i) sc.fields.omega[i] = parse_field_expr(omega[i], "fields.omega", i);
    for (int i = 0; i < 8; ++i) sc.fields.psi[i] = parse_field_expr(psi[i], "fields.psi", i);

    auto xi = string_array(kv, "automorphism.xi", 4);
    for (int i = 0; i < 4; ++i) sc.aut.xi[i] = parse_field_expr(xi[i], "automorphism.xi", i);
    auto mode_it = kv.find("automorphism.mode");
    if (mode_it == kv.end()) throw ScenarioError("missing required key 'automorphism.mode'");
    const std::string mode = mode_it->second.str;
    if (mode == "kosmann") {
        sc.aut.mode = InfinitesimalAutomorphism::Mode::Kosmann;
    } else if (mode == "explicit") {
        sc.aut.mode = InfinitesimalAutomorphism::Mode::Explicit;
        auto xiv = string_array(kv, "automorphism.xi_v", 6);
        for (int i = 0; i < 6; ++i)
            sc.aut.xi_v[i] = parse_field_expr(xiv[i], "automorphism.xi_v", i);
    } else {
        throw ScenarioError("automorphism.mode must be 'kosmann' or 'explicit'");
    }
    if (auto it = kv.find("automorphism.kosmann_offset"); it != kv.end()) {
        if (it->second.kind != Value::Kind::Array || it->second.items.size() != 6)
            throw ScenarioError("automorphism.kosmann_offset needs 6 numbers");
        for (int i = 0; i < 6; ++i) sc.aut.kosmann_offset[i] = it->second.items[i].number;
    }

    auto num4 = [&](const char* key, std::array<double, 4>& dst) {
        auto it = kv.find(key);
        if (it == kv.end()) return;
        if (it->second.kind != Value::Kind::Array || it->second.items.size() != 4)
            throw ScenarioError(std::string("key '") + key + "' needs 4 numbers");
        for (int i = 0; i < 4; ++i) dst[i] = it->second.items[i].number;
    };
    num4("sampling.box_lo", sc.sampling.box_lo);
    num4("sampling.box_hi", sc.sampling.box_hi);
    num4("sampling.lattice_lo", sc.sampling.lattice_lo);
    num4("sampling.lattice_hi", sc.sampling.lattice_hi);
    if (auto it = kv.find("sampling.lattice"); it != kv.end()) {
        if (it->second.kind != Value::Kind::Array || it->second.items.size() != 4)
            throw ScenarioError("sampling.lattice needs 4 integers");
        for (int i = 0; i < 4; ++i)
            sc.sampling.lattice[i] = static_cast<int>(it->second.items[i].number);
    }
    if (auto it = kv.find("sampling.points"); it != kv.end())
        sc.sampling.points = static_cast<int>(it->second.number);
    if (auto it = kv.find("sampling.order"); it != kv.end())
        sc.sampling.order = static_cast<int>(it->second.number);
    if (auto it = kv.find("sampling.seed"); it != kv.end()) {
        sc.sampling.seed = static_cast<std::uint64_t>(it->second.number);
        sc.sampling.seed_set = true;
    }

    if (auto it = kv.find("suites.run"); it != kv.end())
        sc.suites = string_array(kv, "suites.run", 0);
    for (const auto& [k, v] : kv) {
        if (k.rfind("tolerances.", 0) != 0) continue;
        sc.tolerances[k.substr(11)] = v.number;
    }

    // invariants
    if (!sc.sampling.seed_set) throw ScenarioError("missing required key 'sampling.seed'");
    if (sc.sampling.points < 1) throw ScenarioError("sampling.points must be >= 1");
    sc.fields.order = sc.sampling.order;

    // all named constants must resolve
    auto check_consts = [&](const Expr& e, const std::string& where) {
        for (const auto& n : e.constant_names())
            if (!sc.fields.consts.count(n))
                throw ScenarioError("unbound constant '" + n + "' in " + where);
    };
    for (int i = 0; i < 16; ++i) check_consts(sc.fields.theta[i], "fields.theta");
    for (int i = 0; i < 24; ++i) check_consts(sc.fields.omega[i], "fields.omega");
    for (int i = 0; i < 8; ++i) check_consts(sc.fields.psi[i], "fields.psi");
    for (int i = 0; i < 4; ++i) check_consts(sc.aut.xi[i], "automorphism.xi");
    return sc;
}

Scenario from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    // flatten into the same key table
    std::map<std::string, Value> kv;
    std::function<Value(const nlohmann::json&)> conv = [&](const nlohmann::json& n) -> Value {
        if (n.is_number()) return {Value::Kind::Number, n.get<double>(), "", {}};
        if (n.is_string()) return {Value::Kind::String, 0, n.get<std::string>(), {}};
        if (n.is_array()) {
            Value v{Value::Kind::Array, 0, "", {}};
            for (const auto& item : n) v.items.push_back(conv(item));
            return v;
        }
        throw ScenarioError("unsupported JSON value type in scenario");
    };
    for (auto& [sec, body] : j.items()) {
        if (body.is_object()) {
            for (auto& [key, val] : body.items()) kv[sec + "." + key] = conv(val);
        } else {
            kv[sec] = conv(body);
        }
    }
    return from_table(kv, text);
}

} // namespace

Scenario parse_scenario_text(const std::string& text) {
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == '{') return from_json(text);
        break;
    }
    TableParser tp(text);
    return from_table(tp.parse(), text);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError("cannot open scenario file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    Scenario sc = parse_scenario_text(ss.str());
    if (sc.name.empty()) {
        auto slash = path.find_last_of('/');
        auto base = (slash == std::string::npos) ? path : path.substr(slash + 1);
        auto dot = base.find_last_of('.');
        sc.name = (dot == std::string::npos) ? base : base.substr(0, dot);
    }
    return sc;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace gnvar
