#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stabforge::exactla {

/// Every scalar is stored as a rational. Finite-field elements are stored as
/// their canonical integer code in [0, q): the residue for GF(p), and the
/// base-p packing of the coefficient vector for GF(p^e).
using Scalar = mpq_class;

bool is_prime_u64(std::uint64_t n);

struct GaloisTables;

/// Fast arithmetic on 32-bit codes of a finite field.
class Zq {
public:
    Zq() = default;
    explicit Zq(std::uint32_t p);
    static Zq extension(std::uint32_t p, unsigned e);

    std::uint32_t p() const { return p_; }
    unsigned degree() const { return e_; }
    std::uint32_t order() const { return q_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (e_ == 1) {
            std::uint32_t s = a + b;
            return (s >= p_ || s < a) ? s - p_ : s;
        }
        if (p_ == 2) return a ^ b;
        return add_digits(a, b, false);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
        if (e_ == 1) return a >= b ? a - b : a + (p_ - b);
        if (p_ == 2) return a ^ b;
        return add_digits(a, b, true);
    }
    std::uint32_t neg(std::uint32_t a) const { return sub(0, a); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (e_ == 1) return static_cast<std::uint32_t>(std::uint64_t(a) * b % p_);
        return mul_ext(a, b);
    }
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t k) const;
    /// a^p.
    std::uint32_t frobenius(std::uint32_t a) const { return pow(a, p_); }

    std::uint32_t from_int(long long v) const;
    std::uint32_t from_mpz(const mpz_class& v) const;
    /// Reduction of a rational; empty when the denominator vanishes mod p.
    std::optional<std::uint32_t> reduce(const Scalar& v) const;
    /// Lift of a prime-field code to a signed representative in (-p/2, p/2].
    long long symmetric(std::uint32_t a) const;

    /// Defining polynomial, low to high, monic (extension only).
    std::vector<std::uint32_t> modulus() const;

private:
    std::uint32_t add_digits(std::uint32_t a, std::uint32_t b, bool subtract) const;
    std::uint32_t mul_ext(std::uint32_t a, std::uint32_t b) const;

    std::uint32_t p_ = 2;
    unsigned e_ = 1;
    std::uint32_t q_ = 2;
    std::shared_ptr<const GaloisTables> gf_;
};

enum class FieldKind { Rationals, Prime, Extension };

/// The exact scalar field of a computation.
class Field {
public:
    Field() = default;
    static Field rationals() { return Field(); }
    static Field prime(std::uint32_t p);
    static Field extension(std::uint32_t p, unsigned e);
    /// "Q", "GF(7)", "GF(2^20)", or a bare characteristic "0" / "7".
    static Field parse(const std::string& text);
    /// Smallest field of characteristic p with at least min_order elements.
    static Field at_least(std::uint32_t p, std::uint64_t min_order);

    FieldKind kind() const { return kind_; }
    bool is_finite() const { return kind_ != FieldKind::Rationals; }
    std::uint32_t characteristic() const { return kind_ == FieldKind::Rationals ? 0 : zq_.p(); }
    unsigned degree() const { return kind_ == FieldKind::Extension ? zq_.degree() : 1; }
    /// 0 for the rationals.
    std::uint64_t order() const { return is_finite() ? zq_.order() : 0; }
    const Zq& zq() const;

    std::string name() const;

    Scalar from_int(long long v) const;
    /// Image of a rational number. Throws BadReduction if not integral at p.
    Scalar image(const Scalar& v) const;
    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;
    Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }
    Scalar pow(const Scalar& a, std::uint64_t k) const;
    bool is_zero(const Scalar& a) const { return sgn(a) == 0; }

    std::uint32_t code(const Scalar& a) const { return static_cast<std::uint32_t>(a.get_num().get_ui()); }
    Scalar from_code(std::uint32_t c) const { return Scalar(c); }

    /// True when every element of `sub` is an element of this field under the
    /// code embedding (prime subfield into an extension).
    bool contains(const Field& sub) const;

    bool operator==(const Field& o) const {
        return kind_ == o.kind_ && characteristic() == o.characteristic() && degree() == o.degree();
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    FieldKind kind_ = FieldKind::Rationals;
    Zq zq_;
};

std::string format_scalar(const Scalar& v);
Scalar parse_scalar(const std::string& text);

}  // namespace stabforge::exactla
