#include "doctest.h"

#include "arknit/matrix.hpp"

using namespace arknit;

namespace {

Matrix make(const Field& f, std::size_t r, std::size_t c,
            const std::vector<long long>& entries) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m.at(i, j) = Scalar::from_int(f, entries[i * c + j]);
    return m;
}

// Small deterministic generator for property checks.
struct Lcg {
    std::uint64_t s;
    explicit Lcg(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() { return s = s * 6364136223846793005ull + 1442695040888963407ull; }
    long long small() { return static_cast<long long>(next() % 7) - 3; }
};

Matrix random_matrix(const Field& f, std::size_t r, std::size_t c, Lcg& g) {
    Matrix m(f, r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = Scalar::from_int(f, g.small());
    return m;
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("scalar arithmetic over the rationals") {
    const Field q = Field::rationals();
    const Scalar a = Scalar::parse(q, "2/3");
    const Scalar b = Scalar::parse(q, "-1/6");
    CHECK((a + b).to_string() == "1/2");
    CHECK((a * b).to_string() == "-1/9");
    CHECK((a - a).is_zero());
    CHECK(a.inverse().to_string() == "3/2");
    CHECK(Scalar::parse(q, "4/2").to_string() == "2");
    CHECK_THROWS_AS(Scalar::zero(q).inverse(), Error);
}

TEST_CASE("scalar arithmetic in a prime field") {
    const Field f5 = Field::prime(5);
    const Scalar a = Scalar::from_int(f5, 7);   // 2
    const Scalar b = Scalar::from_int(f5, -1);  // 4
    CHECK(a.to_string() == "2");
    CHECK(b.to_string() == "4");
    CHECK((a * b).to_string() == "3");
    CHECK(a.inverse().to_string() == "3");
    CHECK(Scalar::parse(f5, "3/2").to_string() == "4"); // 3 * inv(2) = 9 = 4
    CHECK_THROWS_AS(Field::prime(6), Error);
}

TEST_CASE("operations refuse mixed fields") {
    const Scalar a = Scalar::from_int(Field::rationals(), 1);
    const Scalar b = Scalar::from_int(Field::prime(5), 1);
    CHECK_THROWS_AS((void)(a + b), Error);
    CHECK_THROWS_AS((void)(a == b), Error);
}

TEST_CASE("rref and rank on pinned examples") {
    const Field q = Field::rationals();
    CHECK(rank(make(q, 2, 2, {1, 2, 2, 4})) == 1);
    CHECK(rank(make(q, 2, 2, {1, 1, 1, 1})) == 1);
    CHECK(rank(Matrix::identity(q, 3)) == 3);
    CHECK(rank(Matrix(q, 2, 3)) == 0);

    const RrefResult rr = rref(make(q, 2, 2, {1, 2, 2, 4}));
    CHECK(rr.pivots == std::vector<std::size_t>{0});
    CHECK(rr.r.at(0, 1).to_string() == "2");
    CHECK(rr.r.at(1, 0).is_zero());
    CHECK(rr.r.at(1, 1).is_zero());
}

TEST_CASE("kernel of a pinned matrix") {
    const Field q = Field::rationals();
    const Matrix a = make(q, 1, 2, {1, 2});
    const Matrix k = kernel(a);
    REQUIRE(k.cols() == 1);
    CHECK((a * k).is_zero());
    // One-dimensional kernel proportional to (-2, 1).
    CHECK(k.at(0, 0) == -(k.at(1, 0) + k.at(1, 0)));
    CHECK(!k.at(1, 0).is_zero());
}

TEST_CASE("solve on pinned examples") {
    const Field q = Field::rationals();
    auto x = solve(make(q, 1, 1, {2}), make(q, 1, 1, {3}));
    REQUIRE(x.has_value());
    CHECK(x->at(0, 0).to_string() == "3/2");

    // Inconsistent system.
    auto y = solve(make(q, 2, 1, {1, 1}), make(q, 2, 1, {1, 2}));
    CHECK(!y.has_value());

    // Underdetermined: particular solution must reproduce b.
    const Matrix a = make(q, 1, 2, {1, 2});
    const Matrix b = make(q, 1, 1, {5});
    auto z = solve(a, b);
    REQUIRE(z.has_value());
    CHECK(a * *z == b);
}

TEST_CASE("linear algebra properties on random matrices over both fields") {
    for (const Field& f : {Field::rationals(), Field::prime(32003)}) {
        Lcg g(f.kind == FieldKind::Rationals ? 11 : 13);
        for (int trial = 0; trial < 25; ++trial) {
            const std::size_t r = 1 + g.next() % 5, c = 1 + g.next() % 5;
            const Matrix a = random_matrix(f, r, c, g);
            CHECK(rank(a) == rank(a.transpose()));
            const Matrix k = kernel(a);
            CHECK(k.cols() + rank(a) == c);
            if (k.cols() > 0) CHECK((a * k).is_zero());
            const Matrix b = a * random_matrix(f, c, 2, g);
            auto x = solve(a, b);
            REQUIRE(x.has_value());
            CHECK(a * *x == b);
        }
    }
}

TEST_CASE("matrix inverse") {
    const Field q = Field::rationals();
    const Matrix a = make(q, 2, 2, {1, 2, 3, 4});
    auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(a * *inv == Matrix::identity(q, 2));
    CHECK(*inv * a == Matrix::identity(q, 2));
    CHECK(!inverse(make(q, 2, 2, {1, 2, 2, 4})).has_value());
}

TEST_CASE("column space membership and extension") {
    const Field q = Field::rationals();
    ColumnSpace cs(make(q, 3, 2, {1, 0, 1, 1, 0, 1}));
    CHECK(cs.dim() == 2);
    auto vec = [&](long long a, long long b, long long c) {
        return std::vector<Scalar>{Scalar::from_int(q, a), Scalar::from_int(q, b),
                                   Scalar::from_int(q, c)};
    };
    CHECK(cs.contains(vec(2, 3, 1)));
    CHECK(!cs.contains(vec(0, 0, 1)));
    CHECK(cs.add(vec(0, 0, 1)));
    CHECK(cs.dim() == 3);
    CHECK(!cs.add(vec(1, 2, 3)));
}

} // TEST_SUITE
