#include "hardykit/config_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace hardykit {

namespace {

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const std::string& what) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok)
            throw ConfigInvalid("unknown key '" + it.key() + "' in " + what +
                                " (typos invalidate runs, refusing)");
    }
}

double endpoint_from_json(const json& j, const std::string& what) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        std::string s = j.get<std::string>();
        if (s == "inf" || s == "+inf") return kInf;
        if (s == "-inf") return -kInf;
    }
    throw ConfigInvalid(what + ": endpoints must be numbers or \"inf\"/\"-inf\"");
}

double require_number(const json& j, const char* key, const std::string& what) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigInvalid(what + " needs a numeric '" + std::string(key) + "'");
    return j.at(key).get<double>();
}

}  // namespace

Interval interval_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw ConfigInvalid("interval must be a two-element array [a, b]");
    return Interval(endpoint_from_json(j[0], "interval"), endpoint_from_json(j[1], "interval"));
}

json interval_to_json(const Interval& iv) {
    json j = json::array();
    j.push_back(iv.lower_infinite() ? json("-inf") : json(iv.a));
    j.push_back(iv.upper_infinite() ? json("inf") : json(iv.b));
    return j;
}

WeightSpec weight_from_json(const json& j) {
    if (!j.is_object() || !j.contains("family"))
        throw ConfigInvalid("weight documents need a 'family' key");
    std::string fam = j.at("family").get<std::string>();
    auto iv = [&]() {
        if (!j.contains("interval"))
            throw ConfigInvalid("weight family '" + fam + "' needs an 'interval'");
        return interval_from_json(j.at("interval"));
    };
    if (fam == "constant") {
        check_keys(j, {"family", "c", "interval"}, "constant weight");
        return WeightSpec::constant(require_number(j, "c", "constant weight"), iv());
    }
    if (fam == "power") {
        check_keys(j, {"family", "lambda", "scale", "interval"}, "power weight");
        double scale = j.contains("scale") ? require_number(j, "scale", "power weight") : 1.0;
        return WeightSpec::power(require_number(j, "lambda", "power weight"), iv(), scale);
    }
    if (fam == "exponential") {
        check_keys(j, {"family", "kappa", "scale", "interval"}, "exponential weight");
        double scale = j.contains("scale") ? require_number(j, "scale", "exponential weight") : 1.0;
        return WeightSpec::exponential(require_number(j, "kappa", "exponential weight"), iv(),
                                       scale);
    }
    if (fam == "log_power") {
        check_keys(j, {"family", "lambda", "mu", "scale", "interval"}, "log-power weight");
        double scale = j.contains("scale") ? require_number(j, "scale", "log-power weight") : 1.0;
        return WeightSpec::log_power(require_number(j, "lambda", "log-power weight"),
                                     require_number(j, "mu", "log-power weight"), iv(), scale);
    }
    if (fam == "indicator") {
        check_keys(j, {"family", "support", "interval"}, "indicator weight");
        if (!j.contains("support")) throw ConfigInvalid("indicator weight needs a 'support'");
        return WeightSpec::indicator(interval_from_json(j.at("support")), iv());
    }
    if (fam == "piecewise") {
        check_keys(j, {"family", "pieces", "interval"}, "piecewise weight");
        if (!j.contains("pieces") || !j.at("pieces").is_array())
            throw ConfigInvalid("piecewise weight needs a 'pieces' array");
        std::vector<std::pair<Interval, WeightSpec>> pieces;
        for (const auto& pj : j.at("pieces")) {
            check_keys(pj, {"interval", "weight"}, "piecewise piece");
            pieces.emplace_back(interval_from_json(pj.at("interval")),
                                weight_from_json(pj.at("weight")));
        }
        return WeightSpec::piecewise(std::move(pieces), iv());
    }
    if (fam == "product") {
        check_keys(j, {"family", "factors", "interval"}, "product weight");
        if (!j.contains("factors") || !j.at("factors").is_array())
            throw ConfigInvalid("product weight needs a 'factors' array");
        std::vector<WeightSpec> factors;
        for (const auto& fj : j.at("factors")) factors.push_back(weight_from_json(fj));
        return WeightSpec::product(std::move(factors), iv());
    }
    if (fam == "tabulated") {
        check_keys(j, {"family", "points"}, "tabulated weight");
        if (!j.contains("points") || !j.at("points").is_array())
            throw ConfigInvalid("tabulated weight needs a 'points' array of [x, value] pairs");
        std::vector<double> xs, vs;
        for (const auto& pj : j.at("points")) {
            if (!pj.is_array() || pj.size() != 2)
                throw ConfigInvalid("tabulated points must be [x, value] pairs");
            xs.push_back(pj[0].get<double>());
            vs.push_back(pj[1].get<double>());
        }
        return WeightSpec::tabulated(std::move(xs), std::move(vs));
    }
    throw ConfigInvalid("unknown weight family '" + fam + "'");
}

json weight_to_json(const WeightSpec& w) {
    json j;
    switch (w.family()) {
        case WeightFamily::Constant:
            j["family"] = "constant";
            j["c"] = w.param_scale();
            break;
        case WeightFamily::Power:
            j["family"] = "power";
            j["lambda"] = w.param_lambda();
            if (w.param_scale() != 1.0) j["scale"] = w.param_scale();
            break;
        case WeightFamily::Exponential:
            j["family"] = "exponential";
            j["kappa"] = w.param_kappa();
            if (w.param_scale() != 1.0) j["scale"] = w.param_scale();
            break;
        case WeightFamily::LogPower:
            j["family"] = "log_power";
            j["lambda"] = w.param_lambda();
            j["mu"] = w.param_mu();
            if (w.param_scale() != 1.0) j["scale"] = w.param_scale();
            break;
        case WeightFamily::Indicator:
            j["family"] = "indicator";
            j["support"] = interval_to_json(w.support());
            break;
        case WeightFamily::Piecewise: {
            j["family"] = "piecewise";
            json ps = json::array();
            for (const auto& [piv, pw] : w.pieces())
                ps.push_back(json{{"interval", interval_to_json(piv)}, {"weight", weight_to_json(pw)}});
            j["pieces"] = ps;
            break;
        }
        case WeightFamily::Product: {
            j["family"] = "product";
            json fs = json::array();
            for (const auto& f : w.factors()) fs.push_back(weight_to_json(f));
            j["factors"] = fs;
            break;
        }
        case WeightFamily::Tabulated: {
            j["family"] = "tabulated";
            json pts = json::array();
            for (std::size_t i = 0; i < w.sample_xs().size(); ++i)
                pts.push_back(json::array({w.sample_xs()[i], w.sample_values()[i]}));
            j["points"] = pts;
            return j;  // interval implied by the samples
        }
    }
    j["interval"] = interval_to_json(w.interval());
    return j;
}

QuadratureSettings quadrature_from_json(const json& j) {
    QuadratureSettings s;
    check_keys(j, {"rel_tol", "abs_tol", "max_subdivisions", "endpoint_map"},
               "quadrature settings");
    if (j.contains("rel_tol")) s.rel_tol = j.at("rel_tol").get<double>();
    if (j.contains("abs_tol")) s.abs_tol = j.at("abs_tol").get<double>();
    if (j.contains("max_subdivisions")) s.max_subdivisions = j.at("max_subdivisions").get<int>();
    if (j.contains("endpoint_map")) {
        std::string m = j.at("endpoint_map").get<std::string>();
        if (m == "none")
            s.endpoint_map = EndpointMap::None;
        else if (m == "log_lower")
            s.endpoint_map = EndpointMap::LogLower;
        else if (m == "log_upper")
            s.endpoint_map = EndpointMap::LogUpper;
        else if (m == "double_exponential")
            s.endpoint_map = EndpointMap::DoubleExponential;
        else
            throw ConfigInvalid("unknown endpoint_map '" + m + "'");
    }
    s.validate();
    return s;
}

SupSettings sup_from_json(const json& j) {
    SupSettings s;
    check_keys(j, {"initial_grid", "refine_passes", "rel_change_tol", "abs_tol", "log_range"},
               "sup settings");
    if (j.contains("initial_grid")) s.initial_grid = j.at("initial_grid").get<int>();
    if (j.contains("refine_passes")) s.refine_passes = j.at("refine_passes").get<int>();
    if (j.contains("rel_change_tol")) s.rel_change_tol = j.at("rel_change_tol").get<double>();
    if (j.contains("abs_tol")) s.abs_tol = j.at("abs_tol").get<double>();
    if (j.contains("log_range")) s.log_range = j.at("log_range").get<double>();
    if (s.initial_grid < 5 || s.refine_passes < 0 || !(s.rel_change_tol > 0.0))
        throw ConfigInvalid("sup settings out of range");
    return s;
}

// ---------------------------------------------------------------------------
// minimal TOML subset

namespace {

std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    auto e = s.find_last_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

json toml_scalar(const std::string& tok) {
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"')
        return json(tok.substr(1, tok.size() - 2));
    if (tok == "true") return json(true);
    if (tok == "false") return json(false);
    try {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos == tok.size()) {
            if (tok.find('.') == std::string::npos && tok.find('e') == std::string::npos &&
                tok.find('E') == std::string::npos && std::fabs(v) < 9e15)
                return json(static_cast<long long>(v));
            return json(v);
        }
    } catch (...) {
    }
    throw ConfigInvalid("cannot parse TOML value '" + tok + "'");
}

json toml_value(const std::string& tok) {
    if (!tok.empty() && tok.front() == '[') {
        if (tok.back() != ']') throw ConfigInvalid("unterminated TOML array");
        json arr = json::array();
        std::string body = tok.substr(1, tok.size() - 2);
        std::string cur;
        int depth = 0;
        bool in_str = false;
        for (char ch : body) {
            if (ch == '"') in_str = !in_str;
            if (!in_str) {
                if (ch == '[') ++depth;
                if (ch == ']') --depth;
                if (ch == ',' && depth == 0) {
                    if (!trim(cur).empty()) arr.push_back(toml_value(trim(cur)));
                    cur.clear();
                    continue;
                }
            }
            cur += ch;
        }
        if (!trim(cur).empty()) arr.push_back(toml_value(trim(cur)));
        return arr;
    }
    return toml_scalar(tok);
}

std::vector<std::string> split_dotted(const std::string& key) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : key) {
        if (ch == '.') {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(trim(cur));
    for (const auto& p : parts)
        if (p.empty()) throw ConfigInvalid("empty component in TOML key '" + key + "'");
    return parts;
}

}  // namespace

json toml_to_json(const std::string& text) {
    json root = json::object();
    std::vector<std::string> section;
    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigInvalid("malformed TOML table header: " + line);
            section = split_dotted(trim(line.substr(1, line.size() - 2)));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigInvalid("malformed TOML line: " + line);
        auto keys = split_dotted(trim(line.substr(0, eq)));
        json value = toml_value(trim(line.substr(eq + 1)));
        json* node = &root;
        for (const auto& s : section) node = &((*node)[s]);
        for (std::size_t i = 0; i + 1 < keys.size(); ++i) node = &((*node)[keys[i]]);
        (*node)[keys.back()] = std::move(value);
    }
    return root;
}

json load_config_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigInvalid("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".toml")
        return toml_to_json(buf.str());
    try {
        return json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw ConfigInvalid("config '" + path + "' is not valid JSON: " + e.what());
    }
}

std::uint64_t config_hash(const json& j) {
    std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace hardykit
