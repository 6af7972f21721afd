#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sshom {

/// Identifier of a mutant option variable. Indices are dense and 0-based;
/// variable i prints as "m<i>".
struct VarId {
    int index = -1;

    VarId() = default;
    constexpr explicit VarId(int i) : index(i) {}

    auto operator<=>(const VarId&) const = default;
};

/// A full assignment over a variable universe, represented as the set of
/// variables taken as true. Ordering is lexicographic on the sorted index
/// sequence, which is the canonical enumeration order everywhere.
class Assignment {
public:
    Assignment() = default;
    Assignment(std::initializer_list<VarId> vars);

    static Assignment of_indices(std::initializer_list<int> indices);

    void insert(VarId v);
    bool contains(VarId v) const;
    std::size_t size() const { return vars_.size(); }
    bool empty() const { return vars_.empty(); }

    /// Sorted ascending, duplicate-free.
    const std::vector<VarId>& vars() const { return vars_; }

    std::string to_string() const; // e.g. "{m0, m3}"

    auto operator<=>(const Assignment&) const = default;

private:
    std::vector<VarId> vars_;
};

/// Propositional formula over mutant variables. Formulas are kept in a
/// canonical reduced ordered decision-diagram form (variable order = mutant
/// index), so equality of handles is semantic equivalence. Values are
/// immutable and cheap to copy; construction and queries are not
/// thread-safe and must stay on one thread.
class PropFormula {
public:
    /// Defaults to the constant false.
    PropFormula();

    static PropFormula constant(bool value);
    static PropFormula var(VarId v);

    /// Parses the canonical text syntax: `m<i>`, `!`, `&`, `|`,
    /// parentheses, `true`, `false`. Precedence: ! > & > |.
    static PropFormula parse(std::string_view text);

    PropFormula operator!() const;
    PropFormula operator&(const PropFormula& rhs) const;
    PropFormula operator|(const PropFormula& rhs) const;
    PropFormula implies(const PropFormula& rhs) const;
    PropFormula iff(const PropFormula& rhs) const;

    PropFormula& operator&=(const PropFormula& rhs) { return *this = *this & rhs; }
    PropFormula& operator|=(const PropFormula& rhs) { return *this = *this | rhs; }

    bool is_false() const;
    bool is_true() const;
    bool is_sat() const { return !is_false(); }

    /// Standard propositional semantics under a full assignment (variables
    /// absent from `a` are false).
    bool evaluate(const Assignment& a) const;

    /// Variables the formula actually depends on, ascending.
    std::vector<VarId> support() const;

    /// Canonical text form: a disjunction of cubes in variable order,
    /// e.g. `(m0 & !m1) | (!m0 & m1)`, `m1`, `true`.
    std::string to_string() const;

    /// Semantic equivalence; identical truth tables compare equal.
    bool operator==(const PropFormula& rhs) const { return node_ == rhs.node_; }

private:
    explicit PropFormula(std::uint32_t node) : node_(node) {}

    std::uint32_t node_;
    friend class BddManager;
    friend std::vector<Assignment> all_sat(const PropFormula&, const std::vector<VarId>&,
                                           int, std::size_t);
};

inline bool equivalent(const PropFormula& f, const PropFormula& g) { return f == g; }

inline bool is_sat(const PropFormula& f) { return f.is_sat(); }

inline bool evaluate(const PropFormula& f, const Assignment& a) { return f.evaluate(a); }

/// Raised when an enumeration would return more than the configured cap.
class EnumerationCapExceeded : public std::runtime_error {
public:
    explicit EnumerationCapExceeded(std::size_t cap);
    std::size_t cap() const { return cap_; }

private:
    std::size_t cap_;
};

class FormulaParseError : public std::runtime_error {
public:
    FormulaParseError(const std::string& message, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

inline constexpr std::size_t kDefaultAllSatCap = 1'000'000;

/// All assignments over `universe` that satisfy `f` and set at least
/// `min_true` variables. Assignments are fully specified over the universe
/// and returned in lexicographic order of their sorted index sequences.
/// Throws EnumerationCapExceeded when the result would exceed `cap`, and
/// std::invalid_argument when f mentions a variable outside the universe.
std::vector<Assignment> all_sat(const PropFormula& f, const std::vector<VarId>& universe,
                                int min_true = 0, std::size_t cap = kDefaultAllSatCap);

/// Convenience overload for the dense universe {m0, ..., m<n-1>}.
std::vector<Assignment> all_sat(const PropFormula& f, int universe_size, int min_true = 0,
                                std::size_t cap = kDefaultAllSatCap);

} // namespace sshom
