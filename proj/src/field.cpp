#include "arknit/field.hpp"

#include <cstdlib>

namespace arknit {

namespace {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

} // namespace

Field Field::prime(std::uint64_t p) {
    require(is_prime_u64(p), "field characteristic must be prime: " + std::to_string(p));
    require(p < (1ull << 31), "prime field characteristic too large");
    return Field{FieldKind::Prime, p};
}

std::string Field::to_string() const {
    if (kind == FieldKind::Rationals) return "Q";
    return "F" + std::to_string(p);
}

Field Field::parse(const std::string& s) {
    if (s == "Q" || s == "q" || s == "rationals") return rationals();
    if (!s.empty() && (s[0] == 'F' || s[0] == 'f')) {
        const std::string digits = s.substr(1);
        require(!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos,
                "cannot parse field: " + s);
        return prime(std::strtoull(digits.c_str(), nullptr, 10));
    }
    fail("cannot parse field: " + s);
}

Scalar Scalar::from_int(const Field& f, long long n) {
    Scalar s(f);
    if (f.kind == FieldKind::Rationals) {
        s.q_ = mpq_class(static_cast<long>(n));
    } else {
        const long long p = static_cast<long long>(f.p);
        long long r = n % p;
        if (r < 0) r += p;
        s.r_ = static_cast<std::uint64_t>(r);
    }
    return s;
}

Scalar Scalar::from_mpq(const Field& f, const mpq_class& q) {
    require(f.kind == FieldKind::Rationals, "rational literal in a prime field context");
    Scalar s(f);
    s.q_ = q;
    s.q_.canonicalize();
    return s;
}

Scalar Scalar::parse(const Field& f, const std::string& str) {
    require(!str.empty(), "empty scalar literal");
    const auto slash = str.find('/');
    const std::string num = slash == std::string::npos ? str : str.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : str.substr(slash + 1);
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i >= t.size()) return false;
        return t.find_first_not_of("0123456789", i) == std::string::npos;
    };
    require(valid_int(num) && valid_int(den), "cannot parse scalar: " + str);
    if (f.kind == FieldKind::Rationals) {
        mpq_class q{mpz_class(num), mpz_class(den)};
        require(sgn(q.get_den()) != 0, "zero denominator in scalar: " + str);
        q.canonicalize();
        Scalar s(f);
        s.q_ = q;
        return s;
    }
    // Reduce numerator and denominator mod p, then divide.
    mpz_class zn(num), zd(den), zp(static_cast<unsigned long>(f.p));
    require(sgn(zd) != 0, "zero denominator in scalar: " + str);
    mpz_class rn = zn % zp, rd = zd % zp;
    if (sgn(rn) < 0) rn += zp;
    if (sgn(rd) < 0) rd += zp;
    Scalar n = from_int(f, rn.get_si());
    Scalar d = from_int(f, rd.get_si());
    require(!d.is_zero(), "denominator vanishes in F" + std::to_string(f.p) + ": " + str);
    return n * d.inverse();
}

void Scalar::check_same(const Scalar& o) const {
    require(field_ == o.field_,
            "field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
}

bool Scalar::is_zero() const {
    return field_.kind == FieldKind::Rationals ? sgn(q_) == 0 : r_ == 0;
}

bool Scalar::is_one() const {
    return field_.kind == FieldKind::Rationals ? q_ == 1 : r_ == 1;
}

Scalar Scalar::operator+(const Scalar& o) const {
    check_same(o);
    Scalar s(field_);
    if (field_.kind == FieldKind::Rationals) s.q_ = q_ + o.q_;
    else {
        s.r_ = r_ + o.r_;
        if (s.r_ >= field_.p) s.r_ -= field_.p;
    }
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    check_same(o);
    Scalar s(field_);
    if (field_.kind == FieldKind::Rationals) s.q_ = q_ * o.q_;
    else s.r_ = mulmod(r_, o.r_, field_.p);
    return s;
}

Scalar Scalar::operator-() const {
    Scalar s(field_);
    if (field_.kind == FieldKind::Rationals) s.q_ = -q_;
    else s.r_ = r_ == 0 ? 0 : field_.p - r_;
    return s;
}

Scalar Scalar::inverse() const {
    require(!is_zero(), "division by zero");
    Scalar s(field_);
    if (field_.kind == FieldKind::Rationals) s.q_ = 1 / q_;
    else s.r_ = powmod(r_, field_.p - 2, field_.p);
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    check_same(o);
    return field_.kind == FieldKind::Rationals ? q_ == o.q_ : r_ == o.r_;
}

std::string Scalar::to_string() const {
    if (field_.kind == FieldKind::Rationals) return q_.get_str();
    return std::to_string(r_);
}

} // namespace arknit
