#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fleckforge/axkatz.hpp"
#include "fleckforge/wilson.hpp"

namespace fleckforge::cli {

using Json = nlohmann::ordered_json;

/// Bad flags or a malformed instance; maps to exit code 1.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Kind { Fleck, Synthesize, Theorem12, Corollary11, Chevalley, Axkatz, Lemma22 };

std::string kind_name(Kind k);

struct FleckInstance {
    std::uint32_t p = 2;
    std::uint32_t a = 1;
    std::uint64_t n = 0;
    BigInt r = 0;
    IntegerValuedPoly f{{BigInt(1)}};
};

struct SynthesizeInstance {
    std::uint32_t p = 2;
    std::uint32_t a = 1;
    std::uint64_t b = 1;
    IntegerValuedPoly f{{BigInt(1)}};
    std::vector<BigInt> g;
    std::int64_t q_lo = -25;
    std::int64_t q_hi = 25;
};

/// Everything the counting kinds need; unused fields stay empty.
struct CountInstance {
    Kind kind = Kind::Theorem12;
    std::uint32_t p = 2;
    std::uint64_t b = 1;
    std::size_t n_vars = 0;
    std::vector<std::string> texts;
    std::vector<MultiPoly> polys;
    std::vector<std::uint32_t> a;       // theorem12: one per polynomial; corollary11: one entry
    std::vector<IntegerValuedPoly> F;   // theorem12
    std::vector<std::uint64_t> l;       // corollary11
    std::vector<std::uint64_t> j;       // lemma22
    std::uint64_t c = 0;                // lemma22
    std::optional<std::uint64_t> ceiling;
    bool exact_mode = false;

    CongruenceSystem system() const;
};

struct Instance {
    Kind kind;
    std::optional<FleckInstance> fleck;
    std::optional<SynthesizeInstance> synthesize;
    std::optional<CountInstance> count;
};

/// Structural validation mirroring schemas/instance.schema.json, then
/// semantic checks (primality, table length, polynomial grammar).
Instance parse_instance(const Json& doc);
Instance load_instance(const std::string& path);

/// Accepts a JSON integer or a decimal string.
BigInt json_bigint(const Json& v, const std::string& field);
std::uint64_t json_u64(const Json& v, const std::string& field);

IntegerValuedPoly parse_ivp(const Json& v, const std::string& field);
/// Comma-separated binomial-basis coefficients, e.g. "0,1".
IntegerValuedPoly parse_coeff_list(const std::string& text);

/// Normalized echo: every integer as a decimal string.
Json echo(const Instance& inst);
Json ivp_json(const IntegerValuedPoly& f);
Json strings(const std::vector<BigInt>& v);

}  // namespace fleckforge::cli
