#pragma once

// Problem files and JSON output.
//
//   {"derivations":["x"], "indeterminates":["y"],
//    "ranking":{"type":"orderly"},
//    "polynomials":["y'^2 - 4*y"],
//    "multipliers":["y'"],                       (optional)
//    "budgets":{"prolongation":8, "depth":32}}   (optional)

#include "rittkit/canonical.hpp"
#include "rittkit/io.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace rittkit {

using Json = nlohmann::ordered_json;

struct Problem {
    Context ctx;
    Ranking ranking;
    Json ranking_config;
    std::vector<DiffPoly> polynomials;
    std::vector<DiffPoly> multipliers;
    Budgets budgets;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset)
{
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

[[noreturn]] inline void bad(const std::string& msg) { throw ParseError(msg, 0, 0); }

inline std::vector<std::string> names(const Json& j, const char* key)
{
    if (!j.contains(key) || !j[key].is_array() || j[key].empty()) bad(std::string("\"") + key + "\" must be a nonempty array of names");
    std::vector<std::string> out;
    for (const auto& s : j[key]) {
        if (!s.is_string()) bad(std::string("\"") + key + "\" must contain strings");
        out.push_back(s.get<std::string>());
    }
    return out;
}

inline Ranking ranking_from(const Json& r, const Context& ctx)
{
    if (!r.is_object() || !r.contains("type") || !r["type"].is_string()) bad("\"ranking\" needs a \"type\"");
    auto type = r["type"].get<std::string>();
    if (type == "orderly") return Ranking::orderly();
    if (type == "elimination") {
        if (!r.contains("order") || !r["order"].is_array()) bad("elimination ranking needs an \"order\" array");
        std::vector<std::uint32_t> order;
        for (const auto& s : r["order"]) {
            if (!s.is_string()) bad("elimination order must list indeterminate names");
            auto j = ctx.indeterminate_index(s.get<std::string>());
            if (!j) bad("undeclared indeterminate '" + s.get<std::string>() + "' in ranking");
            order.push_back(static_cast<std::uint32_t>(*j));
        }
        try {
            return Ranking::elimination(order);
        } catch (const std::invalid_argument& e) {
            bad(e.what());
        }
    }
    if (type == "weighted") {
        if (!r.contains("matrix") || !r["matrix"].is_array()) bad("weighted ranking needs a \"matrix\"");
        std::vector<std::vector<long>> rows;
        for (const auto& row : r["matrix"]) {
            if (!row.is_array()) bad("weight matrix rows must be arrays");
            std::vector<long> v;
            for (const auto& x : row) {
                if (!x.is_number_integer()) bad("weights must be integers");
                v.push_back(x.get<long>());
            }
            rows.push_back(std::move(v));
        }
        try {
            return Ranking::weighted(rows, ctx.m(), ctx.n());
        } catch (const std::invalid_argument& e) {
            bad(e.what());
        }
    }
    bad("unknown ranking type '" + type + "'");
}

inline std::vector<DiffPoly> poly_list(const Json& j, const char* key, const Context& ctx)
{
    std::vector<DiffPoly> out;
    if (!j.contains(key)) return out;
    if (!j[key].is_array()) bad(std::string("\"") + key + "\" must be an array of expressions");
    std::size_t i = 0;
    for (const auto& s : j[key]) {
        if (!s.is_string()) bad(std::string("\"") + key + "\" must contain strings");
        try {
            out.push_back(parse_poly(s.get<std::string>(), ctx));
        } catch (const ParseError& e) {
            throw ParseError(std::string(key) + "[" + std::to_string(i) + "]: " + e.what(), e.line(), e.column());
        }
        ++i;
    }
    return out;
}

} // namespace detail

/// Throws ParseError.
inline Problem parse_problem(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = detail::line_col(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON", line, col);
    }
    if (!j.is_object()) detail::bad("problem must be a JSON object");
    std::optional<Context> ctx;
    try {
        ctx.emplace(detail::names(j, "derivations"), detail::names(j, "indeterminates"));
    } catch (const std::invalid_argument& e) {
        detail::bad(e.what());
    }
    Json rc = j.contains("ranking") ? j["ranking"] : Json{{"type", "orderly"}};
    Problem p{*ctx, detail::ranking_from(rc, *ctx), rc, {}, {}, {}};
    if (!j.contains("polynomials")) detail::bad("missing \"polynomials\"");
    p.polynomials = detail::poly_list(j, "polynomials", p.ctx);
    p.multipliers = detail::poly_list(j, "multipliers", p.ctx);
    if (j.contains("budgets")) {
        const auto& b = j["budgets"];
        if (!b.is_object()) detail::bad("\"budgets\" must be an object");
        if (b.contains("prolongation")) {
            if (!b["prolongation"].is_number_unsigned()) detail::bad("prolongation budget must be a nonnegative integer");
            p.budgets.prolongation = b["prolongation"].get<unsigned>();
        }
        if (b.contains("depth")) {
            if (!b["depth"].is_number_unsigned()) detail::bad("depth budget must be a nonnegative integer");
            p.budgets.depth = b["depth"].get<unsigned>();
        }
    }
    return p;
}

inline Json to_json(const std::vector<DiffPoly>& v, const Context& ctx, const Ranking& R)
{
    Json a = Json::array();
    for (const auto& f : v) a.push_back(to_string(f, ctx, R));
    return a;
}

inline Json to_json(const Component& c, const Context& ctx)
{
    const auto& R = c.charset.ranking();
    Json j;
    j["charset"] = to_json(c.charset.elements(), ctx, R);
    j["certified_prime"] = c.certified_prime;
    j["certified_essential"] = c.certified_essential;
    if (!c.inequations.empty()) j["inequations"] = to_json(c.inequations, ctx, R);
    if (!c.reason.empty()) j["reason"] = c.reason;
    return j;
}

inline Json to_json(const Decomposition& D, const Context& ctx)
{
    Json j;
    j["unit"] = D.unit;
    j["components"] = Json::array();
    for (const auto& c : D.components) j["components"].push_back(to_json(c, ctx));
    return j;
}

inline Json to_json(const CanonicalDecomposition& D, const Context& ctx, const Ranking& R)
{
    Json j;
    j["unit"] = D.unit;
    j["components"] = Json::array();
    for (const auto& c : D.components) j["components"].push_back(to_json(c, ctx));
    j["trace"] = Json::array();
    for (const auto& t : D.trace) {
        Json e;
        e["kind"] = t.kind == TraceEntry::Kind::root ? "root" : t.kind == TraceEntry::Kind::colon ? "colon" : "with_h";
        e["depth"] = t.depth;
        e["generators"] = to_json(t.F, ctx, R);
        e["multipliers"] = to_json(t.M, ctx, R);
        e["unit"] = t.unit;
        e["components"] = t.components;
        if (t.revisited) e["revisited"] = true;
        j["trace"].push_back(std::move(e));
    }
    return j;
}

inline Json to_json(const ReductionCertificate& cert, const CharSet& C, const Context& ctx)
{
    const auto& R = C.ranking();
    Json j;
    j["remainder"] = to_string(cert.remainder, ctx, R);
    j["multiplier"] = to_string(cert.multiplier, ctx, R);
    j["factors"] = Json::array();
    for (const auto& f : cert.factors) {
        if (f.power == 0) continue;
        j["factors"].push_back(Json{{"element", f.element}, {"kind", f.separant ? "separant" : "initial"}, {"power", f.power}});
    }
    j["quotients"] = Json::array();
    for (const auto& q : cert.quotients) {
        if (q.quotient.is_zero()) continue;
        j["quotients"].push_back(Json{{"element", q.element}, {"theta", q.theta}, {"quotient", to_string(q.quotient, ctx, R)}});
    }
    return j;
}

inline Json to_json(const GeneratorBasis& g, const Context& ctx, const Ranking& R)
{
    return Json{{"j", g.j}, {"basis", to_json(g.basis, ctx, R)}};
}

} // namespace rittkit
