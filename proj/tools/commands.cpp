#include "commands.hpp"

#include <cstdlib>

#include "fleckforge/fleck.hpp"

namespace fleckforge::cli {
namespace {

using Clock = std::chrono::steady_clock;

void add_timing(Json& report, const RunOptions& opts, Clock::time_point start) {
    if (!opts.timings) return;
    const auto us = std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
    report["timings"] = Json{{"wall_ms", static_cast<double>(us) / 1000.0}};
}

Json optional_i64(const std::optional<std::int64_t>& v) {
    return v ? Json(std::to_string(*v)) : Json(nullptr);
}

Json optional_bool(const std::optional<bool>& v) { return v ? Json(*v) : Json(nullptr); }

Json hypothesis_json(const Hypothesis& h) {
    return Json{{"holds", h.holds}, {"rhs", rational_str(h.rhs)}, {"margin", rational_str(h.margin)}};
}

std::string verdict_name(const DivisibilityVerdict& v) {
    if (!v.hypothesis.holds) return "hypothesis_not_met";
    return v.divisible ? "confirmed" : "violation";
}

Json verdict_json(const DivisibilityVerdict& v) {
    Json out;
    out["statement"] = v.statement;
    out["sum"] = v.sum.get_str();
    out["sum_exact"] = v.sum_exact;
    out["modulus"] = v.modulus.get_str();
    out["residue"] = mod_floor(v.sum, v.modulus).get_str();
    out["divisible"] = v.divisible;
    out["hypothesis"] = hypothesis_json(v.hypothesis);
    if (v.corollary_hypothesis) out["corollary_hypothesis"] = hypothesis_json(*v.corollary_hypothesis);
    return out;
}

DivisibilityVerdict dispatch(const CountInstance& c, EvalMode mode, const EnumerationOptions& eo) {
    switch (c.kind) {
        case Kind::Theorem12: return verify_theorem12(c.system(), mode, eo);
        case Kind::Corollary11: return corollary11_verify(c.polys, c.a.front(), c.b, c.l, c.p, mode, eo);
        case Kind::Chevalley: return chevalley_warning_verify(c.polys, c.p, mode, eo);
        case Kind::Axkatz: return axkatz_prime_verify(c.polys, c.b, c.p, mode, eo);
        case Kind::Lemma22: return lemma22_verify(c.polys, c.j, c.c, c.p, mode, eo);
        default: throw UsageError("not a counting instance");
    }
}

}  // namespace

std::string rational_str(const Rational& q) { return q.get_str(); }

std::uint64_t resolve_ceiling(const RunOptions& opts, std::optional<std::uint64_t> from_instance) {
    if (opts.ceiling) return *opts.ceiling;
    if (const char* env = std::getenv("FLECKFORGE_CEILING"); env && *env) {
        try {
            return json_u64(Json(std::string(env)), "FLECKFORGE_CEILING");
        } catch (const UsageError&) {
            throw UsageError("FLECKFORGE_CEILING must be a non-negative decimal integer");
        }
    }
    return from_instance.value_or(kDefaultCeiling);
}

Outcome run_fleck(const FleckInstance& inst, const RunOptions& opts) {
    const auto start = Clock::now();
    const PrimePower pp(inst.p, inst.a);
    const FleckReport rep = check_lemma21(inst.n, inst.r, pp, inst.f);
    Outcome out;
    Json& r = out.report;
    r["command"] = "fleck";
    r["instance"] = echo(Instance{Kind::Fleck, inst, {}, {}});
    Json result;
    result["sum"] = rep.sum.get_str();
    result["valuation"] = rep.valuation.to_string();
    result["bounds"] = Json{{"fleck", optional_i64(rep.bounds.fleck)},
                            {"weisman", optional_i64(rep.bounds.weisman)},
                            {"wan", std::to_string(rep.bounds.wan)},
                            {"factorial", std::to_string(rep.bounds.factorial)}};
    result["satisfied"] = Json{{"fleck", optional_bool(rep.satisfied.fleck)},
                               {"weisman", optional_bool(rep.satisfied.weisman)},
                               {"wan", rep.satisfied.wan},
                               {"factorial", rep.satisfied.factorial}};
    r["result"] = result;
    const bool ok = rep.all_satisfied();
    r["verdict"] = ok ? "confirmed" : "violation";
    out.exit_code = ok ? kOk : kViolation;
    add_timing(r, opts, start);
    return out;
}

Outcome run_synthesize(const SynthesizeInstance& inst, const RunOptions& opts) {
    const auto start = Clock::now();
    const PrimePower pp(inst.p, inst.a);
    const ResidueTable g(pp, inst.g);
    Outcome out;
    Json& r = out.report;
    r["command"] = "synthesize";
    r["instance"] = echo(Instance{Kind::Synthesize, {}, inst, {}});
    try {
        const NewtonPoly P = synthesize(inst.b, inst.f, g);
        const Theorem11Report check = verify_theorem11(P, inst.f, g, inst.q_lo, inst.q_hi);
        Json result;
        result["truncation"] = std::to_string(P.truncation());
        result["degree"] = P.degree() ? Json(std::to_string(*P.degree())) : Json(nullptr);
        result["modulus"] = P.modulus().get_str();
        result["coeffs"] = strings(P.coeffs);
        Json bounds = Json::array();
        for (auto m : P.bound_records) bounds.push_back(std::to_string(m));
        result["bound_records"] = bounds;
        Json valuations = Json::array();
        for (const auto& c : P.coeffs) valuations.push_back(ord_int(c, inst.p).to_string());
        result["valuations"] = valuations;
        Json ver;
        ver["ok"] = check.ok;
        ver["q_range"] = Json::array({std::to_string(check.q_lo), std::to_string(check.q_hi)});
        ver["checked"] = std::to_string(check.checked);
        if (check.counterexample) {
            const auto& ce = *check.counterexample;
            ver["counterexample"] = Json{{"q", ce.q.get_str()},
                                         {"r", std::to_string(ce.r)},
                                         {"lhs", ce.lhs.get_str()},
                                         {"rhs", ce.rhs.get_str()}};
        } else {
            ver["counterexample"] = nullptr;
        }
        result["verification"] = ver;
        r["result"] = result;
        r["verdict"] = check.ok ? "confirmed" : "violation";
        out.exit_code = check.ok ? kOk : kViolation;
    } catch (const InternalError& e) {
        r["result"] = nullptr;
        r["verdict"] = "violation";
        r["error"] = e.what();
        out.exit_code = kViolation;
    }
    add_timing(r, opts, start);
    return out;
}

Outcome run_count(const CountInstance& inst, const RunOptions& opts) {
    const auto start = Clock::now();
    EnumerationOptions eo;
    if (opts.workers) eo.workers = *opts.workers;
    eo.ceiling = resolve_ceiling(opts, inst.ceiling);
    const EvalMode mode = (opts.exact || inst.exact_mode) ? EvalMode::Exact : EvalMode::Modular;
    Outcome out;
    Json& r = out.report;
    r["command"] = "count";
    r["instance"] = echo(Instance{inst.kind, {}, {}, inst});
    r["run"] = Json{{"mode", mode == EvalMode::Exact ? "exact" : "modular"},
                    {"workers", eo.resolved_workers()},
                    {"ceiling", std::to_string(eo.ceiling)}};
    try {
        const DivisibilityVerdict v = dispatch(inst, mode, eo);
        r["result"] = verdict_json(v);
        r["verdict"] = verdict_name(v);
    } catch (const TheoremViolation& e) {
        r["result"] = verdict_json(e.verdict());
        r["verdict"] = "violation";
        out.exit_code = kViolation;
    } catch (const InternalError& e) {
        r["result"] = nullptr;
        r["verdict"] = "violation";
        r["error"] = e.what();
        out.exit_code = kViolation;
    } catch (const CeilingExceeded& e) {
        r["result"] = nullptr;
        r["verdict"] = "refused";
        r["error"] = Json{{"reason", "ceiling"},
                          {"required_points", e.required().get_str()},
                          {"ceiling", std::to_string(e.ceiling())}};
        out.exit_code = kCeiling;
    }
    add_timing(r, opts, start);
    return out;
}

Outcome run_instance(const Instance& inst, const RunOptions& opts) {
    if (inst.fleck) return run_fleck(*inst.fleck, opts);
    if (inst.synthesize) return run_synthesize(*inst.synthesize, opts);
    return run_count(*inst.count, opts);
}

Outcome run_bounds(const BoundsRequest& req) {
    const PrimePower pp(req.p, req.a);
    Outcome out;
    Json& r = out.report;
    r["command"] = "bounds";
    Json in{{"p", std::to_string(req.p)},
            {"a", std::to_string(req.a)},
            {"n", std::to_string(req.n)},
            {"l", std::to_string(req.l)}};
    in["b"] = req.b ? Json(std::to_string(*req.b)) : Json(nullptr);
    r["input"] = in;
    Json result;
    result["fleck"] = std::to_string(fleck_bound(req.n, req.p));
    result["weisman"] = req.a >= 1 ? Json(std::to_string(weisman_bound(req.n, pp))) : Json(nullptr);
    result["wan"] = std::to_string(wan_bound(req.n, pp, req.l));
    result["factorial"] = std::to_string(factorial_bound(req.n, pp, req.l));
    result["M"] = std::to_string(bound_M(req.n, pp, req.l));
    if (req.b) {
        result["max_degree"] = std::to_string(max_degree(pp, req.l, *req.b));
        result["wilson_degree_limit"] =
            req.a >= 1 ? Json(wilson_degree_limit(pp, *req.b).get_str()) : Json(nullptr);
    }
    r["result"] = result;
    return out;
}

}  // namespace fleckforge::cli
