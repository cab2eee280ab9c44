#pragma once

#include <array>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "pairpref/errors.hpp"

namespace pairpref {

struct Clause {
    std::array<int, 3> lits;  // signed 1-based variable indices

    bool operator==(const Clause& o) const { return lits == o.lits; }
};

struct Formula {
    int num_vars = 0;
    std::vector<Clause> clauses;

    bool operator==(const Formula& o) const { return num_vars == o.num_vars && clauses == o.clauses; }
};

// Accepts the DIMACS CNF subset: 'c' comment lines, one "p cnf n m" header,
// whitespace-separated literals with each clause terminated by 0. Clauses must
// have exactly three literals.
inline Formula parse_dimacs(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Formula f;
    int expected_clauses = -1;
    std::vector<int> current;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == 'c') continue;
        if (line[0] == 'p') {
            if (expected_clauses >= 0) fail(Errc::SyntaxError, "duplicate problem line");
            std::istringstream ls(line);
            std::string p, fmt;
            if (!(ls >> p >> fmt >> f.num_vars >> expected_clauses) || fmt != "cnf")
                fail(Errc::SyntaxError, "problem line must be 'p cnf <vars> <clauses>'");
            if (f.num_vars < 0 || expected_clauses < 0) fail(Errc::SyntaxError, "negative counts in problem line");
            continue;
        }
        if (expected_clauses < 0) fail(Errc::SyntaxError, "clause before problem line");
        std::istringstream ls(line);
        int lit;
        while (ls >> lit) {
            if (lit == 0) {
                if (current.size() != 3)
                    fail(Errc::ClauseArity, "clause has " + std::to_string(current.size()) + " literals, need 3");
                f.clauses.push_back({{current[0], current[1], current[2]}});
                current.clear();
            } else {
                if (std::abs(lit) < 1 || std::abs(lit) > f.num_vars)
                    fail(Errc::SyntaxError, "literal " + std::to_string(lit) + " out of range");
                current.push_back(lit);
            }
        }
        if (!ls.eof()) fail(Errc::SyntaxError, "non-integer token in clause line");
    }
    if (!current.empty()) fail(Errc::SyntaxError, "unterminated clause");
    if (static_cast<int>(f.clauses.size()) != expected_clauses)
        fail(Errc::SyntaxError, "clause count does not match problem line");
    return f;
}

inline std::string serialize_dimacs(const Formula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << " " << f.clauses.size() << "\n";
    for (const auto& c : f.clauses) out << c.lits[0] << " " << c.lits[1] << " " << c.lits[2] << " 0\n";
    return out.str();
}

// Empty iff every clause is 3-ary over distinct variables and every variable
// occurs exactly twice unnegated and exactly twice negated.
inline std::vector<std::string> validate_22e3(const Formula& f) {
    std::vector<std::string> violations;
    std::vector<int> pos(f.num_vars + 1, 0), neg(f.num_vars + 1, 0);
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        const auto& c = f.clauses[i];
        for (int k = 0; k < 3; ++k) {
            int v = std::abs(c.lits[k]);
            if (v < 1 || v > f.num_vars) {
                violations.push_back("clause " + std::to_string(i) + " uses out-of-range variable");
                continue;
            }
            (c.lits[k] > 0 ? pos : neg)[v] += 1;
        }
        if (std::abs(c.lits[0]) == std::abs(c.lits[1]) || std::abs(c.lits[0]) == std::abs(c.lits[2]) ||
            std::abs(c.lits[1]) == std::abs(c.lits[2]))
            violations.push_back("clause " + std::to_string(i) + " repeats a variable");
    }
    for (int v = 1; v <= f.num_vars; ++v) {
        if (pos[v] != 2)
            violations.push_back("variable " + std::to_string(v) + " occurs " + std::to_string(pos[v]) +
                                 " times unnegated, need 2");
        if (neg[v] != 2)
            violations.push_back("variable " + std::to_string(v) + " occurs " + std::to_string(neg[v]) +
                                 " times negated, need 2");
    }
    return violations;
}

// Random (2,2)-E3-SAT formula: the multiset of 4n literal occurrences is
// shuffled into m = 4n/3 clause slots, then repaired by swaps until no clause
// repeats a variable. Deterministic per seed.
inline Formula generate_22e3(int n, std::uint64_t seed) {
    if (n < 3 || n % 3 != 0)
        fail(Errc::InfeasibleN, "need n divisible by 3 and at least 3 (3m = 4n must have integral m)");
    const int m = 4 * n / 3;
    std::mt19937_64 g(seed);
    std::vector<int> slots;
    for (int v = 1; v <= n; ++v) {
        slots.push_back(v);
        slots.push_back(v);
        slots.push_back(-v);
        slots.push_back(-v);
    }
    auto var_of = [&](int slot_index) { return std::abs(slots[slot_index]); };
    auto clause_conflicts = [&](int c) {
        int a = var_of(3 * c), b = var_of(3 * c + 1), d = var_of(3 * c + 2);
        return (a == b) + (a == d) + (b == d);
    };
    for (int attempt = 0; attempt < 1000; ++attempt) {
        for (std::size_t i = slots.size(); i > 1; --i) std::swap(slots[i - 1], slots[g() % i]);
        // local repair: swap a slot of a conflicted clause with one from
        // another clause whenever the total conflict count drops
        bool progress = true;
        auto total = [&]() {
            int t = 0;
            for (int c = 0; c < m; ++c) t += clause_conflicts(c);
            return t;
        };
        int conflicts = total();
        while (conflicts > 0 && progress) {
            progress = false;
            for (int c = 0; c < m && conflicts > 0; ++c) {
                if (clause_conflicts(c) == 0) continue;
                for (int s = 3 * c; s < 3 * c + 3; ++s) {
                    bool swapped = false;
                    for (int s2 = 0; s2 < 3 * m && !swapped; ++s2) {
                        if (s2 / 3 == c) continue;
                        int before = clause_conflicts(c) + clause_conflicts(s2 / 3);
                        std::swap(slots[s], slots[s2]);
                        int after = clause_conflicts(c) + clause_conflicts(s2 / 3);
                        if (after < before) {
                            conflicts += after - before;
                            progress = true;
                            swapped = true;
                        } else {
                            std::swap(slots[s], slots[s2]);
                        }
                    }
                    if (swapped) break;
                }
            }
        }
        if (conflicts == 0) {
            Formula f;
            f.num_vars = n;
            for (int c = 0; c < m; ++c) f.clauses.push_back({{slots[3 * c], slots[3 * c + 1], slots[3 * c + 2]}});
            return f;
        }
    }
    fail(Errc::InfeasibleN, "could not distribute occurrences into repeat-free clauses");
}

inline bool satisfies(const Formula& f, const std::vector<bool>& assignment) {
    for (const auto& c : f.clauses) {
        bool sat = false;
        for (int lit : c.lits) {
            int v = std::abs(lit);
            if ((lit > 0) == assignment[v - 1]) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

// Lexicographically first satisfying assignment (variable 1 most significant,
// false < true), or nothing after exhausting all 2^n.
inline std::optional<std::vector<bool>> sat_brute(const Formula& f) {
    if (f.num_vars > 30) fail(Errc::SizeGuard, "brute-force SAT limited to 30 variables");
    const int n = f.num_vars;
    std::vector<bool> a(n, false);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (int v = 0; v < n; ++v) a[v] = (mask >> (n - 1 - v)) & 1;
        if (satisfies(f, a)) return a;
    }
    return std::nullopt;
}

}  // namespace pairpref
