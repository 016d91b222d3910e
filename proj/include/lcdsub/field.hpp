#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace lcdsub {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Finite field F_{p^r}.
///
/// Elements are plain integers in [0, q): the polynomial c_0 + c_1 x + ... + c_{r-1} x^{r-1}
/// is encoded as sum c_i p^i. This encoding is also the textual form used in files and reports.
///
/// The modulus is the lexicographically smallest monic irreducible polynomial of degree r,
/// comparing coefficients from the constant term upwards. For r = 1 the modulus is x.
/// Multiplication goes through log/antilog tables when q <= 2^16 and r > 1; addition in odd
/// characteristic extensions uses Zech logarithms on the same tables. Larger extension fields
/// fall back to polynomial arithmetic.
class Field {
public:
    using Elem = std::uint32_t;

    static constexpr std::uint32_t kMaxOrder = 1u << 20;
    static constexpr std::uint32_t kTableLimit = 1u << 16;

    /// Throws NotPrime / FieldTooLarge.
    static FieldPtr make(std::uint32_t p, std::uint32_t r = 1);
    /// Builds F_q from q = p^r; throws NotPrime when q is not a prime power.
    static FieldPtr from_order(std::uint32_t q);

    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return r_; }
    std::uint32_t order() const noexcept { return q_; }
    /// Monic modulus, coefficients low-to-high (length r + 1).
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
    std::string name() const;
    bool is_binary() const noexcept { return p_ == 2 && r_ == 1; }

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    /// Throws DivisionByZero.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const;
    Elem pow(Elem a, std::uint64_t e) const noexcept;

    /// Image of an integer under Z -> F_p -> F_{p^r}.
    Elem from_int(std::int64_t k) const noexcept;
    std::vector<std::uint32_t> coeffs(Elem a) const;
    Elem from_coeffs(std::span<const std::uint32_t> c) const;

    bool operator==(const Field& other) const noexcept {
        return p_ == other.p_ && r_ == other.r_ && modulus_ == other.modulus_;
    }

private:
    Field(std::uint32_t p, std::uint32_t r);

    Elem poly_mul(Elem a, Elem b) const noexcept;
    Elem digit_add(Elem a, Elem b, bool subtract) const noexcept;
    void build_tables();

    std::uint32_t p_;
    std::uint32_t r_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    bool tables_ = false;
    std::vector<Elem> exp_;              // size 2(q-1)
    std::vector<std::int32_t> log_;      // log_[0] unused
    std::vector<std::int32_t> zech_;     // log(1 + g^i), -1 when 1 + g^i = 0
    std::uint32_t minus_one_log_ = 0;    // log(-1)
};

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept;
/// Throws FieldMismatch.
void require_same_field(const FieldPtr& a, const FieldPtr& b);

bool is_prime(std::uint64_t n) noexcept;

namespace poly {

/// Polynomials over F_p, coefficient vectors low-to-high with no trailing zeros
/// (the zero polynomial is the empty vector).
using Poly = std::vector<std::uint32_t>;

void trim(Poly& f);
Poly mul_mod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p);
Poly rem(Poly a, const Poly& m, std::uint32_t p);
Poly gcd(Poly a, Poly b, std::uint32_t p);
/// Rabin-style test: f has no factor of degree <= deg(f)/2.
bool is_irreducible(const Poly& f, std::uint32_t p);
/// Lexicographically smallest monic irreducible of degree r (low-degree coefficient first).
Poly smallest_irreducible(std::uint32_t p, std::uint32_t r);

}  // namespace poly

/// A field element bound to its field, for arithmetic outside of matrices.
class FieldElement {
public:
    FieldElement(FieldPtr field, Field::Elem value);

    const FieldPtr& field() const noexcept { return field_; }
    Field::Elem value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inv() const;
    FieldElement pow(std::uint64_t e) const;

    bool operator==(const FieldElement& o) const;

private:
    FieldPtr field_;
    Field::Elem value_;
};

}  // namespace lcdsub
