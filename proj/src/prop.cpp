#include "sshom/prop.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <limits>
#include <set>
#include <unordered_map>

namespace sshom {

namespace {

constexpr std::uint32_t kFalse = 0;
constexpr std::uint32_t kTrue = 1;
constexpr int kTerminalVar = std::numeric_limits<int>::max();

struct NodeKey {
    int var;
    std::uint32_t lo;
    std::uint32_t hi;
    bool operator==(const NodeKey&) const = default;
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const {
        std::uint64_t h = static_cast<std::uint64_t>(k.var) * 0x9e3779b97f4a7c15ull;
        h ^= (static_cast<std::uint64_t>(k.lo) << 32) | k.hi;
        h *= 0xff51afd7ed558ccdull;
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

struct IteKey {
    std::uint32_t f, g, h;
    bool operator==(const IteKey&) const = default;
};

struct IteKeyHash {
    std::size_t operator()(const IteKey& k) const {
        std::uint64_t h = k.f;
        h = h * 0x100000001b3ull ^ k.g;
        h = h * 0x100000001b3ull ^ k.h;
        return static_cast<std::size_t>(h);
    }
};

} // namespace

/// Reduced ordered BDD store shared by all PropFormula values. Single
/// threaded; nodes are never reclaimed, which is fine at the scale of
/// mutant catalogs (tens to low hundreds of variables).
class BddManager {
public:
    static BddManager& instance() {
        static BddManager mgr;
        return mgr;
    }

    std::uint32_t var(int index) {
        assert(index >= 0);
        return mk(index, kFalse, kTrue);
    }

    std::uint32_t ite(std::uint32_t f, std::uint32_t g, std::uint32_t h) {
        if (f == kTrue) return g;
        if (f == kFalse) return h;
        if (g == h) return g;
        if (g == kTrue && h == kFalse) return f;

        IteKey key{f, g, h};
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;

        int top = std::min({var_of(f), var_of(g), var_of(h)});
        std::uint32_t r = mk(top, ite(cofactor(f, top, false), cofactor(g, top, false),
                                      cofactor(h, top, false)),
                             ite(cofactor(f, top, true), cofactor(g, top, true),
                                 cofactor(h, top, true)));
        cache_.emplace(key, r);
        return r;
    }

    std::uint32_t land(std::uint32_t a, std::uint32_t b) { return ite(a, b, kFalse); }
    std::uint32_t lor(std::uint32_t a, std::uint32_t b) { return ite(a, kTrue, b); }
    std::uint32_t lnot(std::uint32_t a) { return ite(a, kFalse, kTrue); }

    bool eval(std::uint32_t n, const Assignment& a) const {
        while (n > kTrue) {
            const Node& node = nodes_[n];
            n = a.contains(VarId(node.var)) ? node.hi : node.lo;
        }
        return n == kTrue;
    }

    void collect_support(std::uint32_t n, std::set<int>& out) const {
        std::set<std::uint32_t> visited;
        collect_support_rec(n, out, visited);
    }

    int var_of(std::uint32_t n) const { return nodes_[n].var; }
    std::uint32_t lo_of(std::uint32_t n) const { return nodes_[n].lo; }
    std::uint32_t hi_of(std::uint32_t n) const { return nodes_[n].hi; }

private:
    struct Node {
        int var;
        std::uint32_t lo;
        std::uint32_t hi;
    };

    BddManager() {
        nodes_.push_back({kTerminalVar, kFalse, kFalse});
        nodes_.push_back({kTerminalVar, kTrue, kTrue});
    }

    std::uint32_t mk(int var, std::uint32_t lo, std::uint32_t hi) {
        if (lo == hi) return lo;
        NodeKey key{var, lo, hi};
        if (auto it = unique_.find(key); it != unique_.end()) return it->second;
        nodes_.push_back({var, lo, hi});
        std::uint32_t id = static_cast<std::uint32_t>(nodes_.size() - 1);
        unique_.emplace(key, id);
        return id;
    }

    void collect_support_rec(std::uint32_t n, std::set<int>& out,
                             std::set<std::uint32_t>& visited) const {
        if (n <= kTrue || !visited.insert(n).second) return;
        const Node& node = nodes_[n];
        out.insert(node.var);
        collect_support_rec(node.lo, out, visited);
        collect_support_rec(node.hi, out, visited);
    }

    std::uint32_t cofactor(std::uint32_t n, int var, bool value) const {
        const Node& node = nodes_[n];
        if (node.var != var) return n;
        return value ? node.hi : node.lo;
    }

    std::vector<Node> nodes_;
    std::unordered_map<NodeKey, std::uint32_t, NodeKeyHash> unique_;
    std::unordered_map<IteKey, std::uint32_t, IteKeyHash> cache_;
};

// ---------------------------------------------------------------------------
// Assignment

Assignment::Assignment(std::initializer_list<VarId> vars) {
    for (VarId v : vars) insert(v);
}

Assignment Assignment::of_indices(std::initializer_list<int> indices) {
    Assignment a;
    for (int i : indices) a.insert(VarId(i));
    return a;
}

void Assignment::insert(VarId v) {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), v);
    if (it == vars_.end() || *it != v) vars_.insert(it, v);
}

bool Assignment::contains(VarId v) const {
    return std::binary_search(vars_.begin(), vars_.end(), v);
}

std::string Assignment::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (i > 0) out += ", ";
        out += "m" + std::to_string(vars_[i].index);
    }
    out += "}";
    return out;
}

// ---------------------------------------------------------------------------
// PropFormula

PropFormula::PropFormula() : node_(kFalse) {}

PropFormula PropFormula::constant(bool value) { return PropFormula(value ? kTrue : kFalse); }

PropFormula PropFormula::var(VarId v) {
    if (v.index < 0) throw std::invalid_argument("variable index must be non-negative");
    return PropFormula(BddManager::instance().var(v.index));
}

PropFormula PropFormula::operator!() const {
    return PropFormula(BddManager::instance().lnot(node_));
}

PropFormula PropFormula::operator&(const PropFormula& rhs) const {
    return PropFormula(BddManager::instance().land(node_, rhs.node_));
}

PropFormula PropFormula::operator|(const PropFormula& rhs) const {
    return PropFormula(BddManager::instance().lor(node_, rhs.node_));
}

PropFormula PropFormula::implies(const PropFormula& rhs) const {
    return PropFormula(BddManager::instance().ite(node_, rhs.node_, kTrue));
}

PropFormula PropFormula::iff(const PropFormula& rhs) const {
    auto& mgr = BddManager::instance();
    return PropFormula(mgr.ite(node_, rhs.node_, mgr.lnot(rhs.node_)));
}

bool PropFormula::is_false() const { return node_ == kFalse; }
bool PropFormula::is_true() const { return node_ == kTrue; }

bool PropFormula::evaluate(const Assignment& a) const {
    return BddManager::instance().eval(node_, a);
}

std::vector<VarId> PropFormula::support() const {
    std::set<int> indices;
    BddManager::instance().collect_support(node_, indices);
    std::vector<VarId> out;
    out.reserve(indices.size());
    for (int i : indices) out.push_back(VarId(i));
    return out;
}

namespace {

void collect_cubes(const BddManager& mgr, std::uint32_t n, std::vector<std::pair<int, bool>>& path,
                   std::vector<std::string>& cubes) {
    if (n == kFalse) return;
    if (n == kTrue) {
        std::string cube;
        for (auto [var, positive] : path) {
            if (!cube.empty()) cube += " & ";
            if (!positive) cube += "!";
            cube += "m" + std::to_string(var);
        }
        cubes.push_back(std::move(cube));
        return;
    }
    int var = mgr.var_of(n);
    path.emplace_back(var, false);
    collect_cubes(mgr, mgr.lo_of(n), path, cubes);
    path.back().second = true;
    collect_cubes(mgr, mgr.hi_of(n), path, cubes);
    path.pop_back();
}

} // namespace

std::string PropFormula::to_string() const {
    if (is_false()) return "false";
    if (is_true()) return "true";

    std::vector<std::pair<int, bool>> path;
    std::vector<std::string> cubes;
    collect_cubes(BddManager::instance(), node_, path, cubes);

    if (cubes.size() == 1) return cubes.front();
    std::string out;
    for (const std::string& cube : cubes) {
        if (!out.empty()) out += " | ";
        bool multi = cube.find('&') != std::string::npos;
        out += multi ? "(" + cube + ")" : cube;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    PropFormula parse() {
        PropFormula f = parse_or();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return f;
    }

private:
    PropFormula parse_or() {
        PropFormula f = parse_and();
        while (peek() == '|') {
            ++pos_;
            f = f | parse_and();
        }
        return f;
    }

    PropFormula parse_and() {
        PropFormula f = parse_unary();
        while (peek() == '&') {
            ++pos_;
            f = f & parse_unary();
        }
        return f;
    }

    PropFormula parse_unary() {
        if (peek() == '!') {
            ++pos_;
            return !parse_unary();
        }
        return parse_atom();
    }

    PropFormula parse_atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            PropFormula f = parse_or();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return f;
        }
        if (c == 'm') {
            ++pos_;
            if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
                fail("expected variable index after 'm'");
            long idx = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                idx = idx * 10 + (text_[pos_] - '0');
                if (idx > std::numeric_limits<int>::max()) fail("variable index out of range");
                ++pos_;
            }
            return PropFormula::var(VarId(static_cast<int>(idx)));
        }
        if (text_.substr(pos_, 4) == "true") {
            pos_ += 4;
            return PropFormula::constant(true);
        }
        if (text_.substr(pos_, 5) == "false") {
            pos_ += 5;
            return PropFormula::constant(false);
        }
        fail("expected formula atom");
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) {
        throw FormulaParseError(message, pos_);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

PropFormula PropFormula::parse(std::string_view text) { return FormulaParser(text).parse(); }

FormulaParseError::FormulaParseError(const std::string& message, std::size_t position)
    : std::runtime_error("formula parse error at offset " + std::to_string(position) + ": " +
                         message),
      position_(position) {}

EnumerationCapExceeded::EnumerationCapExceeded(std::size_t cap)
    : std::runtime_error("all-sat enumeration exceeded the cap of " + std::to_string(cap) +
                         " assignments"),
      cap_(cap) {}

// ---------------------------------------------------------------------------
// AllSAT

namespace {

struct AllSatWalker {
    const BddManager& mgr;
    const std::vector<VarId>& universe;
    int min_true;
    std::size_t cap;
    std::vector<VarId> current;
    std::vector<Assignment> out;

    void walk(std::uint32_t node, std::size_t uidx) {
        if (node == kFalse) return;
        // Not enough variables left to reach min_true.
        if (static_cast<int>(current.size()) +
                static_cast<int>(universe.size() - uidx) < min_true)
            return;
        if (uidx == universe.size()) {
            assert(node == kTrue);
            if (static_cast<int>(current.size()) >= min_true) {
                if (out.size() >= cap) throw EnumerationCapExceeded(cap);
                Assignment a;
                for (VarId v : current) a.insert(v);
                out.push_back(std::move(a));
            }
            return;
        }
        VarId v = universe[uidx];
        std::uint32_t lo = node, hi = node;
        if (node > kTrue && mgr.var_of(node) == v.index) {
            lo = mgr.lo_of(node);
            hi = mgr.hi_of(node);
        }
        walk(lo, uidx + 1);
        current.push_back(v);
        walk(hi, uidx + 1);
        current.pop_back();
    }
};

} // namespace

std::vector<Assignment> all_sat(const PropFormula& f, const std::vector<VarId>& universe,
                                int min_true, std::size_t cap) {
    if (min_true < 0) throw std::invalid_argument("min_true must be non-negative");

    std::vector<VarId> sorted = universe;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    for (VarId v : f.support()) {
        if (!std::binary_search(sorted.begin(), sorted.end(), v))
            throw std::invalid_argument("formula variable m" + std::to_string(v.index) +
                                        " is outside the declared universe");
    }

    AllSatWalker walker{BddManager::instance(), sorted, min_true, cap, {}, {}};
    walker.walk(f.node_, 0);
    std::sort(walker.out.begin(), walker.out.end());
    return walker.out;
}

std::vector<Assignment> all_sat(const PropFormula& f, int universe_size, int min_true,
                                std::size_t cap) {
    std::vector<VarId> universe;
    universe.reserve(static_cast<std::size_t>(universe_size));
    for (int i = 0; i < universe_size; ++i) universe.push_back(VarId(i));
    return all_sat(f, universe, min_true, cap);
}

} // namespace sshom
