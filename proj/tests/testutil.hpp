#pragma once

// Shared fixtures for the test suites: small algebras with hand-checked
// structure, plus a deterministic random generator.

#include <cstdint>
#include <vector>

#include "arknit/algebra.hpp"

namespace testutil {

using namespace arknit;

struct Lcg {
    std::uint64_t s;
    explicit Lcg(std::uint64_t seed) : s(seed ? seed : 1) {}
    std::uint64_t next() { return s = s * 6364136223846793005ull + 1442695040888963407ull; }
    // Uniform-ish in [0, n).
    std::uint64_t below(std::uint64_t n) { return (next() >> 24) % n; }
    long long small_int() { return static_cast<long long>(below(9)) - 4; }
};

// Linear quiver 1 <-a- 2 <-b- 3 (sink at vertex 1), no relations.
inline AlgebraPtr a3_hereditary(const Field& f = Field::rationals()) {
    Quiver q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a", 1, 0}, {"b", 2, 1}};
    return BasicAlgebra::build(q, {}, f);
}

// Same quiver with the zero relation ba = 0 (the composite 3 -> 1 vanishes).
inline AlgebraPtr a3_rad_square(const Field& f = Field::rationals()) {
    Quiver q;
    q.vertices = {"1", "2", "3"};
    q.arrows = {{"a", 1, 0}, {"b", 2, 1}};
    Relation r;
    r.terms.push_back({Scalar::one(f), PathWord::from_arrows(q, {1, 0})}); // ba
    return BasicAlgebra::build(q, {r}, f);
}

// Linear quiver 1 <-d- 2 <-g- 3 <-b- 4 <-a- 5 with the single zero relation
// abgd = 0 (the full length-4 composite 5 -> 1).  Arrow names follow the
// Greek letters alpha..delta.
inline AlgebraPtr a5_gamma(const Field& f = Field::rationals()) {
    Quiver q;
    q.vertices = {"1", "2", "3", "4", "5"};
    q.arrows = {{"d", 1, 0}, {"g", 2, 1}, {"b", 3, 2}, {"a", 4, 3}};
    Relation r;
    r.terms.push_back({Scalar::one(f), PathWord::from_arrows(q, {3, 2, 1, 0})}); // abgd
    return BasicAlgebra::build(q, {r}, f);
}

// Commutative square: s -f-> x -g-> t, s -h-> y -k-> t with fg = hk.
inline AlgebraPtr square_commutative(const Field& f = Field::rationals()) {
    Quiver q;
    q.vertices = {"s", "x", "y", "t"};
    q.arrows = {{"f", 0, 1}, {"g", 1, 3}, {"h", 0, 2}, {"k", 2, 3}};
    Relation r;
    r.terms.push_back({Scalar::one(f), PathWord::from_arrows(q, {0, 1})});  // fg
    r.terms.push_back({-Scalar::one(f), PathWord::from_arrows(q, {2, 3})}); // hk
    return BasicAlgebra::build(q, {r}, f);
}

} // namespace testutil
