#pragma once

// Differential indeterminates, derivation operators and the derivatives
// theta*y_j they generate.

#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

namespace rittkit {

/// Names of the derivations delta_1..delta_m and indeterminates y_1..y_n.
class Context {
public:
    Context(std::vector<std::string> derivations, std::vector<std::string> indeterminates)
        : derivations_(std::move(derivations)), indeterminates_(std::move(indeterminates))
    {
        if (derivations_.empty()) throw std::invalid_argument("at least one derivation is required");
        if (indeterminates_.empty()) throw std::invalid_argument("at least one indeterminate is required");
        std::unordered_set<std::string> seen;
        for (const auto* list : {&derivations_, &indeterminates_}) {
            for (const auto& name : *list) {
                if (name.empty()) throw std::invalid_argument("empty name");
                if (!seen.insert(name).second) throw std::invalid_argument("duplicate name '" + name + "'");
            }
        }
    }

    std::size_t m() const noexcept { return derivations_.size(); }
    std::size_t n() const noexcept { return indeterminates_.size(); }
    const std::vector<std::string>& derivations() const noexcept { return derivations_; }
    const std::vector<std::string>& indeterminates() const noexcept { return indeterminates_; }

    std::optional<std::size_t> derivation_index(const std::string& name) const
    {
        for (std::size_t i = 0; i < derivations_.size(); ++i)
            if (derivations_[i] == name) return i;
        return std::nullopt;
    }

    std::optional<std::size_t> indeterminate_index(const std::string& name) const
    {
        for (std::size_t i = 0; i < indeterminates_.size(); ++i)
            if (indeterminates_[i] == name) return i;
        return std::nullopt;
    }

    bool operator==(const Context&) const = default;

private:
    std::vector<std::string> derivations_;
    std::vector<std::string> indeterminates_;
};

/// Multi-index e of an operator delta_1^e_1 ... delta_m^e_m.
using MultiIndex = std::vector<std::uint32_t>;

inline unsigned order_of(const MultiIndex& e)
{
    return std::accumulate(e.begin(), e.end(), 0u);
}

/// The derivative theta*y_j. Comparison operators give a structural order
/// used for container keys only; rankings live in ranking.hpp.
struct Derivative {
    MultiIndex op;
    std::uint32_t indet = 0;

    Derivative() = default;
    Derivative(MultiIndex e, std::uint32_t j) : op(std::move(e)), indet(j) {}

    static Derivative base(std::size_t m, std::uint32_t j) { return Derivative(MultiIndex(m, 0), j); }

    unsigned order() const { return order_of(op); }

    Derivative derive(std::size_t k) const
    {
        Derivative d = *this;
        ++d.op.at(k);
        return d;
    }

    Derivative apply(const MultiIndex& e) const
    {
        Derivative d = *this;
        for (std::size_t k = 0; k < e.size(); ++k) d.op.at(k) += e[k];
        return d;
    }

    /// theta with theta(v) == *this, if any.
    std::optional<MultiIndex> operator_from(const Derivative& v) const
    {
        if (indet != v.indet || op.size() != v.op.size()) return std::nullopt;
        MultiIndex theta(op.size());
        for (std::size_t k = 0; k < op.size(); ++k) {
            if (op[k] < v.op[k]) return std::nullopt;
            theta[k] = op[k] - v.op[k];
        }
        return theta;
    }

    bool is_proper_derivative_of(const Derivative& v) const
    {
        auto theta = operator_from(v);
        return theta && order_of(*theta) > 0;
    }

    auto operator<=>(const Derivative&) const = default;
    bool operator==(const Derivative&) const = default;
};

/// All multi-indices of total order exactly k in m variables, in a fixed order.
inline std::vector<MultiIndex> multi_indices_of_order(std::size_t m, unsigned k)
{
    std::vector<MultiIndex> out;
    MultiIndex cur(m, 0);
    auto rec = [&](auto&& self, std::size_t pos, unsigned left) -> void {
        if (pos + 1 == m) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned a = left + 1; a-- > 0;) {
            cur[pos] = a;
            self(self, pos + 1, left - a);
        }
    };
    rec(rec, 0, k);
    return out;
}

inline std::vector<MultiIndex> multi_indices_up_to(std::size_t m, unsigned k)
{
    std::vector<MultiIndex> out;
    for (unsigned o = 0; o <= k; ++o) {
        auto layer = multi_indices_of_order(m, o);
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

} // namespace rittkit
