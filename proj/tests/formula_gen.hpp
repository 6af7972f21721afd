#pragma once

// Random formula generator for property tests. Keeps a plain expression
// tree next to the PropFormula it builds, so expected truth values come
// from an evaluator that never touches the engine under test.

#include <cstdint>
#include <memory>
#include <random>

#include "sshom/prop.hpp"

namespace testgen {

struct TreeNode {
    enum Kind { True, False, Var, Not, And, Or } kind;
    int var = -1;
    std::shared_ptr<TreeNode> lhs, rhs;
};

using TreePtr = std::shared_ptr<TreeNode>;

// Truth value under the assignment given as a bitmask over variable indices.
inline bool tree_eval(const TreeNode& n, std::uint64_t mask) {
    switch (n.kind) {
    case TreeNode::True: return true;
    case TreeNode::False: return false;
    case TreeNode::Var: return (mask >> n.var) & 1;
    case TreeNode::Not: return !tree_eval(*n.lhs, mask);
    case TreeNode::And: return tree_eval(*n.lhs, mask) && tree_eval(*n.rhs, mask);
    case TreeNode::Or: return tree_eval(*n.lhs, mask) || tree_eval(*n.rhs, mask);
    }
    return false;
}

struct GeneratedFormula {
    TreePtr tree;
    sshom::PropFormula formula;
};

inline GeneratedFormula random_formula(std::mt19937_64& rng, int num_vars, int depth) {
    std::uniform_int_distribution<int> pick(0, depth > 0 ? 5 : 2);
    int choice = pick(rng);
    auto node = std::make_shared<TreeNode>();
    switch (choice) {
    case 0:
        node->kind = TreeNode::True;
        return {node, sshom::PropFormula::constant(true)};
    case 1:
        node->kind = TreeNode::False;
        return {node, sshom::PropFormula::constant(false)};
    case 2: {
        std::uniform_int_distribution<int> var(0, num_vars - 1);
        node->kind = TreeNode::Var;
        node->var = var(rng);
        return {node, sshom::PropFormula::var(sshom::VarId(node->var))};
    }
    case 3: {
        auto sub = random_formula(rng, num_vars, depth - 1);
        node->kind = TreeNode::Not;
        node->lhs = sub.tree;
        return {node, !sub.formula};
    }
    case 4: {
        auto a = random_formula(rng, num_vars, depth - 1);
        auto b = random_formula(rng, num_vars, depth - 1);
        node->kind = TreeNode::And;
        node->lhs = a.tree;
        node->rhs = b.tree;
        return {node, a.formula & b.formula};
    }
    default: {
        auto a = random_formula(rng, num_vars, depth - 1);
        auto b = random_formula(rng, num_vars, depth - 1);
        node->kind = TreeNode::Or;
        node->lhs = a.tree;
        node->rhs = b.tree;
        return {node, a.formula | b.formula};
    }
    }
}

inline sshom::Assignment mask_to_assignment(std::uint64_t mask, int num_vars) {
    sshom::Assignment a;
    for (int i = 0; i < num_vars; ++i)
        if ((mask >> i) & 1) a.insert(sshom::VarId(i));
    return a;
}

} // namespace testgen
