// Copyright 2026 The efxgraph Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Exact rational numbers backed by GMP. Every valuation and every comparison
// in the library goes through this type; there is no floating point in the
// core.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace efx {

class Rational {
public:
    Rational() = default;
    Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
    Rational(int value) : value_(value) {}   // NOLINT(google-explicit-constructor)
    Rational(long numerator, unsigned long denominator) : value_(numerator, denominator) {
        if (denominator == 0) throw std::domain_error("rational with zero denominator");
        value_.canonicalize();
    }
    explicit Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

    /// Parses "-?digits(/digits)?". The result is normalized to lowest terms.
    static Rational parse(std::string_view text) {
        if (text.empty()) throw std::invalid_argument("empty rational literal");
        std::size_t pos = 0;
        if (text[0] == '-' || text[0] == '+') pos = 1;
        const auto slash = text.find('/');
        auto digits = [&](std::size_t from, std::size_t to) {
            if (from >= to) return false;
            for (std::size_t k = from; k < to; ++k) {
                if (text[k] < '0' || text[k] > '9') return false;
            }
            return true;
        };
        const std::size_t num_end = slash == std::string_view::npos ? text.size() : slash;
        if (!digits(pos, num_end) ||
            (slash != std::string_view::npos && !digits(slash + 1, text.size()))) {
            throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
        }
        mpq_class q;
        std::string owned(text[0] == '+' ? text.substr(1) : text);
        if (q.set_str(owned, 10) != 0) {
            throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
        }
        if (slash != std::string_view::npos && q.get_den() == 0) {
            throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        }
        q.canonicalize();
        return Rational(std::move(q));
    }

    [[nodiscard]] std::string str() const {
        if (value_.get_den() == 1) return value_.get_num().get_str();
        return value_.get_num().get_str() + "/" + value_.get_den().get_str();
    }

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_zero() const { return sign() == 0; }
    [[nodiscard]] bool is_positive() const { return sign() > 0; }
    [[nodiscard]] const mpq_class& raw() const { return value_; }
    [[nodiscard]] mpz_class numerator() const { return value_.get_num(); }
    [[nodiscard]] mpz_class denominator() const { return value_.get_den(); }

    Rational& operator+=(const Rational& rhs) { value_ += rhs.value_; return *this; }
    Rational& operator-=(const Rational& rhs) { value_ -= rhs.value_; return *this; }
    Rational& operator*=(const Rational& rhs) { value_ *= rhs.value_; return *this; }
    Rational& operator/=(const Rational& rhs) {
        if (rhs.is_zero()) throw std::domain_error("rational division by zero");
        value_ /= rhs.value_;
        return *this;
    }

    friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
    friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
    friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
    friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
    friend Rational operator-(const Rational& x) { return Rational(mpq_class(-x.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        if (c < 0) return std::strong_ordering::less;
        if (c > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class value_;
};

inline const Rational& zero_rational() {
    static const Rational zero;
    return zero;
}

inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace efx
