#include "instance.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace fleckforge::cli {
namespace {

const std::vector<std::pair<std::string, Kind>> kKinds = {
    {"fleck", Kind::Fleck},         {"synthesize", Kind::Synthesize}, {"theorem12", Kind::Theorem12},
    {"corollary11", Kind::Corollary11}, {"chevalley", Kind::Chevalley},   {"axkatz", Kind::Axkatz},
    {"lemma22", Kind::Lemma22},
};

std::set<std::string> allowed_keys(Kind k) {
    const std::set<std::string> counting = {"kind", "p", "n_vars", "polynomials", "ceiling", "exact_mode"};
    auto with = [&](std::initializer_list<const char*> extra) {
        auto s = counting;
        for (auto e : extra) s.insert(e);
        return s;
    };
    switch (k) {
        case Kind::Fleck: return {"kind", "p", "a", "n", "r", "f"};
        case Kind::Synthesize: return {"kind", "p", "a", "b", "f", "g", "q_range"};
        case Kind::Theorem12: return with({"a", "b", "F"});
        case Kind::Corollary11: return with({"a", "b", "l"});
        case Kind::Chevalley: return counting;
        case Kind::Axkatz: return with({"b"});
        case Kind::Lemma22: return with({"c", "j"});
    }
    return {};
}

const Json& require(const Json& doc, const std::string& key) {
    auto it = doc.find(key);
    if (it == doc.end()) throw UsageError("missing field '" + key + "'");
    return *it;
}

std::uint32_t json_u32(const Json& v, const std::string& field) {
    auto x = json_u64(v, field);
    if (x > 0xffffffffu) throw UsageError("field '" + field + "' is too large");
    return static_cast<std::uint32_t>(x);
}

std::uint32_t json_prime(const Json& v) {
    auto p = json_u32(v, "p");
    if (!is_prime(p)) throw UsageError("p = " + std::to_string(p) + " is not prime");
    return p;
}

std::uint64_t json_positive(const Json& v, const std::string& field) {
    auto x = json_u64(v, field);
    if (x == 0) throw UsageError("field '" + field + "' must be positive");
    return x;
}

// Exponents beyond this make p^a tables and moduli meaningless at desk scale.
constexpr std::uint64_t kMaxExponent = 4096;

std::uint32_t json_exponent(const Json& v, const std::string& field) {
    auto a = json_u64(v, field);
    if (a > kMaxExponent) throw UsageError("field '" + field + "' exceeds " + std::to_string(kMaxExponent));
    return static_cast<std::uint32_t>(a);
}

std::vector<std::uint64_t> json_u64_list(const Json& v, const std::string& field) {
    if (!v.is_array()) throw UsageError("field '" + field + "' must be an array");
    std::vector<std::uint64_t> out;
    for (const auto& x : v) out.push_back(json_u64(x, field));
    return out;
}

FleckInstance parse_fleck(const Json& doc) {
    FleckInstance f;
    f.p = json_prime(require(doc, "p"));
    f.a = json_exponent(require(doc, "a"), "a");
    f.n = json_u64(require(doc, "n"), "n");
    f.r = json_bigint(require(doc, "r"), "r");
    if (doc.contains("f")) f.f = parse_ivp(doc["f"], "f");
    return f;
}

SynthesizeInstance parse_synthesize(const Json& doc) {
    SynthesizeInstance s;
    s.p = json_prime(require(doc, "p"));
    s.a = json_exponent(require(doc, "a"), "a");
    s.b = json_positive(require(doc, "b"), "b");
    if (doc.contains("f")) s.f = parse_ivp(doc["f"], "f");
    const Json& g = require(doc, "g");
    if (!g.is_array()) throw UsageError("field 'g' must be an array");
    for (const auto& v : g) s.g.push_back(json_bigint(v, "g"));
    if (BigInt(static_cast<unsigned long>(s.g.size())) != pow(s.p, s.a))
        throw UsageError("g must list p^a = " + pow(s.p, s.a).get_str() + " values, got " +
                         std::to_string(s.g.size()));
    if (doc.contains("q_range")) {
        const Json& q = doc["q_range"];
        if (!q.is_array() || q.size() != 2) throw UsageError("q_range must be [lo, hi]");
        s.q_lo = to_i64(json_bigint(q[0], "q_range"));
        s.q_hi = to_i64(json_bigint(q[1], "q_range"));
        if (s.q_lo > s.q_hi) throw UsageError("q_range is empty");
    }
    return s;
}

CountInstance parse_count(Kind kind, const Json& doc) {
    CountInstance c;
    c.kind = kind;
    c.p = json_prime(require(doc, "p"));
    c.n_vars = json_u64(require(doc, "n_vars"), "n_vars");
    const Json& polys = require(doc, "polynomials");
    if (!polys.is_array()) throw UsageError("field 'polynomials' must be an array");
    for (const auto& t : polys) {
        if (!t.is_string()) throw UsageError("polynomials must be strings");
        c.texts.push_back(t.get<std::string>());
        try {
            c.polys.push_back(parse_poly(c.texts.back(), c.n_vars));
        } catch (const ParseError& e) {
            throw UsageError("polynomial " + std::to_string(c.texts.size()) + ": " + e.what());
        }
    }
    const std::size_t m = c.polys.size();
    if (kind != Kind::Theorem12 && m == 0) throw UsageError("at least one polynomial is required");
    if (doc.contains("ceiling")) c.ceiling = json_positive(doc["ceiling"], "ceiling");
    if (doc.contains("exact_mode")) {
        if (!doc["exact_mode"].is_boolean()) throw UsageError("exact_mode must be a boolean");
        c.exact_mode = doc["exact_mode"].get<bool>();
    }
    auto per_poly = [&](const std::vector<std::uint64_t>& v, const std::string& field) {
        if (v.size() != m) throw UsageError("field '" + field + "' needs one entry per polynomial");
    };
    switch (kind) {
        case Kind::Theorem12: {
            c.b = json_positive(require(doc, "b"), "b");
            const Json& a = require(doc, "a");
            if (a.is_array()) {
                for (const auto& x : a) c.a.push_back(json_exponent(x, "a"));
                if (c.a.size() != m) throw UsageError("field 'a' needs one entry per polynomial");
            } else {
                c.a.assign(m, json_exponent(a, "a"));
            }
            if (doc.contains("F")) {
                const Json& F = doc["F"];
                if (!F.is_array() || F.size() != m) throw UsageError("field 'F' needs one entry per polynomial");
                for (const auto& x : F) c.F.push_back(parse_ivp(x, "F"));
            } else {
                c.F.assign(m, IntegerValuedPoly{{BigInt(1)}});
            }
            break;
        }
        case Kind::Corollary11: {
            c.b = json_positive(require(doc, "b"), "b");
            auto a = json_exponent(require(doc, "a"), "a");
            if (a == 0) throw UsageError("corollary11 needs a >= 1");
            c.a = {a};
            c.l = json_u64_list(require(doc, "l"), "l");
            per_poly(c.l, "l");
            break;
        }
        case Kind::Chevalley: c.b = 1; break;
        case Kind::Axkatz: c.b = json_positive(require(doc, "b"), "b"); break;
        case Kind::Lemma22:
            c.c = json_u64(require(doc, "c"), "c");
            c.j = json_u64_list(require(doc, "j"), "j");
            per_poly(c.j, "j");
            break;
        default: break;
    }
    if (kind != Kind::Chevalley && kind != Kind::Lemma22) {
        for (const auto& f : c.polys) {
            if (f.is_zero()) throw UsageError("polynomials must be nonzero for " + kind_name(kind));
        }
    }
    return c;
}

}  // namespace

std::string kind_name(Kind k) {
    for (const auto& [name, kind] : kKinds)
        if (kind == k) return name;
    return "?";
}

BigInt json_bigint(const Json& v, const std::string& field) {
    if (v.is_number_integer()) {
        if (v.is_number_unsigned()) return BigInt(std::to_string(v.get<std::uint64_t>()));
        return BigInt(std::to_string(v.get<std::int64_t>()));
    }
    if (v.is_string()) {
        const auto& s = v.get_ref<const std::string&>();
        std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
        bool ok = i < s.size();
        for (std::size_t k = i; k < s.size(); ++k) ok = ok && s[k] >= '0' && s[k] <= '9';
        if (ok) return BigInt(s);
    }
    throw UsageError("field '" + field + "' must be an integer or a decimal string");
}

std::uint64_t json_u64(const Json& v, const std::string& field) {
    BigInt x = json_bigint(v, field);
    if (x < 0) throw UsageError("field '" + field + "' must be non-negative");
    if (!x.fits_ulong_p()) throw UsageError("field '" + field + "' is too large");
    return x.get_ui();
}

IntegerValuedPoly parse_ivp(const Json& v, const std::string& field) {
    if (!v.is_object()) throw UsageError("field '" + field + "' must be {basis, coeffs}");
    for (const auto& [key, _] : v.items()) {
        if (key != "basis" && key != "coeffs") throw UsageError("unknown key '" + key + "' in '" + field + "'");
    }
    const std::string basis = v.value("basis", std::string("binomial"));
    const Json& cs = require(v, "coeffs");
    if (!cs.is_array()) throw UsageError("'" + field + ".coeffs' must be an array");
    std::vector<BigInt> coeffs;
    for (const auto& x : cs) coeffs.push_back(json_bigint(x, field + ".coeffs"));
    if (basis == "binomial") return IntegerValuedPoly{std::move(coeffs)};
    if (basis == "monomial") return monomials_to_ivp(coeffs);
    throw UsageError("'" + field + ".basis' must be \"binomial\" or \"monomial\"");
}

IntegerValuedPoly parse_coeff_list(const std::string& text) {
    IntegerValuedPoly f;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        auto first = item.find_first_not_of(' ');
        auto last = item.find_last_not_of(' ');
        if (first == std::string::npos) throw UsageError("empty coefficient in --f");
        f.coeffs.push_back(json_bigint(Json(item.substr(first, last - first + 1)), "--f"));
    }
    if (f.coeffs.empty()) throw UsageError("--f needs at least one coefficient");
    return f;
}

CongruenceSystem CountInstance::system() const {
    CongruenceSystem sys{p, b, n_vars, {}};
    for (std::size_t k = 0; k < polys.size(); ++k) sys.constraints.push_back(Constraint{polys[k], a[k], F[k]});
    return sys;
}

Instance parse_instance(const Json& doc) {
    if (!doc.is_object()) throw UsageError("instance must be a JSON object");
    const Json& k = require(doc, "kind");
    if (!k.is_string()) throw UsageError("'kind' must be a string");
    std::optional<Kind> kind;
    for (const auto& [name, value] : kKinds)
        if (name == k.get<std::string>()) kind = value;
    if (!kind) throw UsageError("unknown kind '" + k.get<std::string>() + "'");
    const auto allowed = allowed_keys(*kind);
    for (const auto& [key, _] : doc.items()) {
        if (!allowed.count(key)) throw UsageError("unknown field '" + key + "' for kind " + kind_name(*kind));
    }
    Instance inst{*kind, {}, {}, {}};
    try {
        if (*kind == Kind::Fleck) inst.fleck = parse_fleck(doc);
        else if (*kind == Kind::Synthesize) inst.synthesize = parse_synthesize(doc);
        else inst.count = parse_count(*kind, doc);
    } catch (const std::overflow_error& e) {
        throw UsageError(e.what());
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open instance file '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError("instance file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_instance(doc);
}

Json strings(const std::vector<BigInt>& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

Json ivp_json(const IntegerValuedPoly& f) {
    return Json{{"basis", "binomial"}, {"coeffs", strings(f.coeffs)}};
}

Json echo(const Instance& inst) {
    Json out;
    out["kind"] = kind_name(inst.kind);
    auto str = [](auto x) { return std::to_string(x); };
    if (inst.fleck) {
        const auto& f = *inst.fleck;
        out["p"] = str(f.p);
        out["a"] = str(f.a);
        out["n"] = str(f.n);
        out["r"] = f.r.get_str();
        out["f"] = ivp_json(f.f);
    } else if (inst.synthesize) {
        const auto& s = *inst.synthesize;
        out["p"] = str(s.p);
        out["a"] = str(s.a);
        out["b"] = str(s.b);
        out["f"] = ivp_json(s.f);
        out["g"] = strings(s.g);
        out["q_range"] = Json::array({str(s.q_lo), str(s.q_hi)});
    } else {
        const auto& c = *inst.count;
        out["p"] = str(c.p);
        out["n_vars"] = str(c.n_vars);
        Json polys = Json::array();
        for (const auto& f : c.polys) polys.push_back(render(f));
        out["polynomials"] = polys;
        switch (c.kind) {
            case Kind::Theorem12: {
                out["b"] = str(c.b);
                Json a = Json::array();
                for (auto x : c.a) a.push_back(str(x));
                out["a"] = a;
                Json F = Json::array();
                for (const auto& x : c.F) F.push_back(ivp_json(x));
                out["F"] = F;
                break;
            }
            case Kind::Corollary11: {
                out["b"] = str(c.b);
                out["a"] = str(c.a.front());
                Json l = Json::array();
                for (auto x : c.l) l.push_back(str(x));
                out["l"] = l;
                break;
            }
            case Kind::Axkatz: out["b"] = str(c.b); break;
            case Kind::Lemma22: {
                out["c"] = str(c.c);
                Json j = Json::array();
                for (auto x : c.j) j.push_back(str(x));
                out["j"] = j;
                break;
            }
            default: break;
        }
    }
    return out;
}

}  // namespace fleckforge::cli
