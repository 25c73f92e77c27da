#include "rittkit.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace rittkit;

namespace {

constexpr int ex_usage = 64;
constexpr int ex_dataerr = 65;
constexpr int ex_software = 70;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json meta(const Problem& p)
{
    return Json{{"ranking", p.ranking_config},
                {"budgets", Json{{"prolongation", p.budgets.prolongation}, {"depth", p.budgets.depth}}}};
}

void print_text(const Json& j, std::ostream& out, const std::string& indent = "")
{
    for (const auto& [key, val] : j.items()) {
        if (val.is_array() && !val.empty() && val.front().is_object()) {
            out << indent << key << ":\n";
            std::size_t i = 0;
            for (const auto& e : val) {
                out << indent << "  [" << i++ << "]\n";
                print_text(e, out, indent + "    ");
            }
        } else if (val.is_array()) {
            out << indent << key << ":";
            for (const auto& e : val) out << ' ' << (e.is_string() ? e.get<std::string>() : e.dump());
            out << '\n';
        } else if (val.is_object()) {
            out << indent << key << ":\n";
            print_text(val, out, indent + "  ");
        } else {
            out << indent << key << ": " << (val.is_string() ? val.get<std::string>() : val.dump()) << '\n';
        }
    }
}

DiffPoly need_poly(const std::optional<std::string>& expr, const Problem& p)
{
    if (!expr) throw UsageError("this command needs --poly");
    return parse_poly(*expr, p.ctx);
}

Json run(const std::string& cmd, const Problem& p, const std::optional<std::string>& poly, const std::optional<std::string>& other)
{
    const auto& R = p.ranking;
    const auto& ctx = p.ctx;
    Json out;
    if (cmd == "charset") {
        auto C = char_set(p.polynomials, R);
        out["unit"] = C.is_unit();
        out["charset"] = to_json(C.elements(), ctx, R);
    } else if (cmd == "reduce") {
        auto f = need_poly(poly, p);
        auto C = char_set(p.polynomials, R);
        if (C.is_unit()) throw std::domain_error("the system contains a nonzero constant");
        out["charset"] = to_json(C.elements(), ctx, R);
        out["partial"] = to_json(partial_reduce(f, C), C, ctx);
        out["full"] = to_json(full_reduce(f, C), C, ctx);
    } else if (cmd == "decompose") {
        out = to_json(rg_decompose_saturated(p.polynomials, p.multipliers, R), ctx);
    } else if (cmd == "canonical") {
        out = to_json(canonical_decompose(p.polynomials, R, p.budgets.depth), ctx, R);
    } else if (cmd == "generators") {
        out = to_json(canonical_generators(p.polynomials, R, p.budgets.prolongation, p.budgets.depth), ctx, R);
    } else if (cmd == "member") {
        auto f = need_poly(poly, p);
        if (f.is_zero()) out["member"] = true;
        else out["member"] = member_radical(f, rg_decompose_saturated(p.polynomials, p.multipliers, R));
    } else if (cmd == "equal") {
        if (!other) throw UsageError("equal needs --other");
        auto q = parse_problem(slurp(*other));
        if (q.ctx.derivations() != ctx.derivations() || q.ctx.indeterminates() != ctx.indeterminates())
            throw ParseError("--other declares different names", 0, 0);
        out["equal"] = equal_radical(p.polynomials, q.polynomials, R);
    } else if (cmd == "zerodiv") {
        auto f = need_poly(poly, p);
        auto z = zero_divisor(f, p.polynomials, R, p.budgets.depth);
        out["verdict"] = to_string(z.verdict);
        if (z.component) out["component"] = to_json(z.component->charset.elements(), ctx, R);
    }
    out["meta"] = meta(p);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Characteristic sets and prime decompositions of radical differential ideals"};
    std::string cmd, input, format = "json";
    std::optional<std::string> poly, other;
    std::optional<unsigned> budget, depth;
    app.add_option("command", cmd, "charset|reduce|decompose|canonical|generators|member|equal|zerodiv")
        ->required()
        ->check(CLI::IsMember({"charset", "reduce", "decompose", "canonical", "generators", "member", "equal", "zerodiv"}));
    app.add_option("--input", input, "problem file")->required();
    app.add_option("--poly", poly, "differential polynomial");
    app.add_option("--other", other, "second problem file for equal");
    app.add_option("--budget", budget, "prolongation order budget");
    app.add_option("--depth", depth, "canonical recursion depth cap");
    app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return ex_usage;
    }

    try {
        auto p = parse_problem(slurp(input));
        if (budget) p.budgets.prolongation = *budget;
        if (depth) p.budgets.depth = *depth;
        auto out = run(cmd, p, poly, other);
        if (format == "json") std::cout << out.dump() << '\n';
        else print_text(out, std::cout);
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "rittkit: " << e.what() << '\n';
        return ex_usage;
    } catch (const ParseError& e) {
        std::cerr << "rittkit: parse error: " << e.what() << '\n';
        return ex_dataerr;
    } catch (const BudgetExhausted& e) {
        std::cerr << "rittkit: " << e.what() << '\n';
        return ex_software;
    } catch (const std::exception& e) {
        std::cerr << "rittkit: " << e.what() << '\n';
        return ex_software;
    }
}
