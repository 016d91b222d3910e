#include "lcdsub/field.hpp"

#include <algorithm>

#include "lcdsub/error.hpp"

namespace lcdsub {

bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace poly {

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly rem(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = [&] {
        // m is monic in every caller except gcd, where we normalise by the leading coefficient.
        std::uint64_t lc = m.back(), result = 1, e = p - 2;
        while (e) {
            if (e & 1) result = result * lc % p;
            lc = lc * lc % p;
            e >>= 1;
        }
        return result;
    }();
    while (a.size() >= m.size()) {
        const std::uint64_t factor = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i) {
            const std::uint64_t sub = factor * m[i] % p;
            a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
        }
        trim(a);
    }
    return a;
}

Poly mul_mod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    }
    Poly out(acc.begin(), acc.end());
    return rem(std::move(out), m, p);
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

namespace {

Poly pow_mod(Poly base, std::uint64_t e, const Poly& m, std::uint32_t p) {
    Poly result{1};
    base = rem(std::move(base), m, p);
    while (e) {
        if (e & 1) result = mul_mod(result, base, m, p);
        base = mul_mod(base, base, m, p);
        e >>= 1;
    }
    return result;
}

}  // namespace

bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t r = f.size() - 1;
    if (r <= 1) return r == 1;
    Poly h{0, 1};
    for (std::size_t i = 1; i <= r / 2; ++i) {
        h = pow_mod(h, p, f, p);
        Poly diff = h;
        if (diff.size() < 2) diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        const Poly g = gcd(f, diff, p);
        if (g.size() > 1) return false;
    }
    return true;
}

Poly smallest_irreducible(std::uint32_t p, std::uint32_t r) {
    if (r == 1) return {0, 1};
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < r; ++i) total *= p;
    // c_0 is the most significant digit of the counter so the scan is lexicographic
    // with the constant term compared first.
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Poly f(r + 1, 0);
        f[r] = 1;
        std::uint64_t v = idx;
        for (std::uint32_t j = 0; j < r; ++j) {
            f[r - 1 - j] = static_cast<std::uint32_t>(v % p);
            v /= p;
        }
        if (f[0] == 0) continue;
        if (is_irreducible(f, p)) return f;
    }
    throw Error(ErrorCode::InternalInconsistency, "no irreducible polynomial found");
}

}  // namespace poly

Field::Field(std::uint32_t p, std::uint32_t r) : p_(p), r_(r), q_(1) {
    for (std::uint32_t i = 0; i < r; ++i) q_ *= p;
    modulus_ = poly::smallest_irreducible(p, r);
    if (r > 1 && q_ <= kTableLimit) build_tables();
}

FieldPtr Field::make(std::uint32_t p, std::uint32_t r) {
    if (!is_prime(p)) throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
    if (r == 0) throw Error(ErrorCode::InvalidSpec, "extension degree must be positive");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < r; ++i) {
        q *= p;
        if (q > kMaxOrder)
            throw Error(ErrorCode::FieldTooLarge, std::to_string(p) + "^" + std::to_string(r) + " exceeds 2^20");
    }
    return FieldPtr(new Field(p, r));
}

FieldPtr Field::from_order(std::uint32_t q) {
    if (q < 2) throw Error(ErrorCode::NotPrime, "field order must be a prime power");
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t r = 0, v = q;
    while (v % p == 0) {
        v /= p;
        ++r;
    }
    if (v != 1) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
    return make(p, r);
}

std::string Field::name() const { return "F_" + std::to_string(q_); }

void Field::build_tables() {
    const std::uint32_t n = q_ - 1;
    std::vector<std::uint32_t> primes;
    {
        std::uint32_t v = n;
        for (std::uint32_t d = 2; d * d <= v; ++d) {
            if (v % d == 0) {
                primes.push_back(d);
                while (v % d == 0) v /= d;
            }
        }
        if (v > 1) primes.push_back(v);
    }
    auto slow_pow = [&](Elem a, std::uint64_t e) {
        Elem result = 1;
        while (e) {
            if (e & 1) result = poly_mul(result, a);
            a = poly_mul(a, a);
            e >>= 1;
        }
        return result;
    };
    Elem generator = 0;
    for (Elem g = 2; g < q_; ++g) {
        bool primitive = true;
        for (auto l : primes) {
            if (slow_pow(g, n / l) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            generator = g;
            break;
        }
    }
    if (generator == 0) throw Error(ErrorCode::InternalInconsistency, "no primitive element");

    exp_.assign(2 * static_cast<std::size_t>(n), 0);
    log_.assign(q_, -1);
    Elem x = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        exp_[i] = x;
        exp_[i + n] = x;
        log_[x] = static_cast<std::int32_t>(i);
        x = poly_mul(x, generator);
    }
    if (p_ != 2) {
        zech_.assign(n, -1);
        for (std::uint32_t i = 0; i < n; ++i) {
            const Elem s = digit_add(1, exp_[i], false);
            zech_[i] = s == 0 ? -1 : log_[s];
        }
        minus_one_log_ = n / 2;
    }
    tables_ = true;
}

Field::Elem Field::poly_mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    std::vector<std::uint64_t> ca(r_), cb(r_);
    for (std::uint32_t i = 0; i < r_; ++i) {
        ca[i] = a % p_;
        a /= p_;
        cb[i] = b % p_;
        b /= p_;
    }
    std::vector<std::uint64_t> prod(2 * r_ - 1, 0);
    for (std::uint32_t i = 0; i < r_; ++i) {
        if (!ca[i]) continue;
        for (std::uint32_t j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
    }
    for (std::size_t d = prod.size() - 1; d >= r_; --d) {
        const std::uint64_t c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (std::uint32_t i = 0; i < r_; ++i)
            prod[d - r_ + i] = (prod[d - r_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
    Elem out = 0;
    for (std::uint32_t i = r_; i-- > 0;) out = out * p_ + static_cast<Elem>(prod[i]);
    return out;
}

Field::Elem Field::digit_add(Elem a, Elem b, bool subtract) const noexcept {
    Elem out = 0, scale = 1;
    for (std::uint32_t i = 0; i < r_; ++i) {
        const std::uint32_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        const std::uint32_t d = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
        out += d * scale;
        scale *= p_;
    }
    return out;
}

Field::Elem Field::add(Elem a, Elem b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (r_ == 1) {
        const std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (a == 0) return b;
    if (b == 0) return a;
    if (!tables_) return digit_add(a, b, false);
    const std::uint32_t n = q_ - 1;
    const std::int32_t la = log_[a], lb = log_[b];
    const std::uint32_t d = static_cast<std::uint32_t>((lb - la + static_cast<std::int32_t>(n)) % static_cast<std::int32_t>(n));
    const std::int32_t z = zech_[d];
    if (z < 0) return 0;
    return exp_[static_cast<std::uint32_t>(la) + static_cast<std::uint32_t>(z)];
}

Field::Elem Field::neg(Elem a) const noexcept {
    if (p_ == 2 || a == 0) return a;
    if (r_ == 1) return p_ - a;
    if (!tables_) return digit_add(0, a, true);
    return exp_[static_cast<std::uint32_t>(log_[a]) + minus_one_log_];
}

Field::Elem Field::sub(Elem a, Elem b) const noexcept {
    if (p_ == 2) return a ^ b;
    if (r_ == 1) return a >= b ? a - b : a + p_ - b;
    if (!tables_) return digit_add(a, b, true);
    return add(a, neg(b));
}

Field::Elem Field::mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (r_ == 1) return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p_);
    if (tables_) return exp_[static_cast<std::uint32_t>(log_[a]) + static_cast<std::uint32_t>(log_[b])];
    return poly_mul(a, b);
}

Field::Elem Field::pow(Elem a, std::uint64_t e) const noexcept {
    Elem result = 1;
    while (e) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

Field::Elem Field::inv(Elem a) const {
    if (a == 0) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + name());
    if (tables_) return exp_[(q_ - 1 - static_cast<std::uint32_t>(log_[a])) % (q_ - 1)];
    return pow(a, q_ - 2);
}

Field::Elem Field::div(Elem a, Elem b) const { return mul(a, inv(b)); }

Field::Elem Field::from_int(std::int64_t k) const noexcept {
    const std::int64_t m = k % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(m < 0 ? m + p_ : m);
}

std::vector<std::uint32_t> Field::coeffs(Elem a) const {
    std::vector<std::uint32_t> c(r_);
    for (std::uint32_t i = 0; i < r_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

Field::Elem Field::from_coeffs(std::span<const std::uint32_t> c) const {
    Elem out = 0;
    for (std::size_t i = std::min<std::size_t>(c.size(), r_); i-- > 0;) out = out * p_ + c[i] % p_;
    return out;
}

bool same_field(const FieldPtr& a, const FieldPtr& b) noexcept { return a == b || (a && b && *a == *b); }

void require_same_field(const FieldPtr& a, const FieldPtr& b) {
    if (!same_field(a, b))
        throw Error(ErrorCode::FieldMismatch, (a ? a->name() : "null") + " vs " + (b ? b->name() : "null"));
}

FieldElement::FieldElement(FieldPtr field, Field::Elem value) : field_(std::move(field)), value_(value) {
    if (value_ >= field_->order()) throw Error(ErrorCode::InvalidSpec, "element out of range for " + field_->name());
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
    require_same_field(field_, o.field_);
    return {field_, field_->div(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::uint64_t e) const { return {field_, field_->pow(value_, e)}; }
bool FieldElement::operator==(const FieldElement& o) const {
    return same_field(field_, o.field_) && value_ == o.value_;
}

}  // namespace lcdsub
