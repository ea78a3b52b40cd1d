// Copyright 2026 The Featherpipe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "featherpipe/estimators/exact_sum.h"

#include <gmp.h>
#include <mpfr.h>

#include <bit>

namespace featherpipe {
namespace {

constexpr long kSumScale = 1074;       // 2^-1074 is the smallest subnormal
constexpr long kSquareScale = 2 * 1074;
constexpr mpfr_prec_t kWide = 256;

// Splits a finite double into an integer mantissa and a power-of-two
// exponent >= -1074 such that x = sign * mantissa * 2^exponent.
struct Decomposed {
  bool negative;
  uint64_t mantissa;
  long exponent;
};

Decomposed Decompose(double x) {
  const auto bits = std::bit_cast<uint64_t>(x);
  const bool negative = (bits >> 63) != 0;
  const auto biased = static_cast<long>((bits >> 52) & 0x7FF);
  const uint64_t fraction = bits & ((uint64_t{1} << 52) - 1);
  if (biased == 0) return {negative, fraction, -1074};
  return {negative, fraction | (uint64_t{1} << 52), biased - 1075};
}

// RAII holder for an mpfr_t with a given precision.
class Float {
 public:
  explicit Float(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Float() { mpfr_clear(v_); }
  Float(const Float&) = delete;
  Float& operator=(const Float&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

struct ExactMoments::Impl {
  mpz_t sum;      // sum(x) * 2^1074
  mpz_t squares;  // sum(x^2) * 2^2148

  Impl() {
    mpz_init(sum);
    mpz_init(squares);
  }
  Impl(const Impl& other) {
    mpz_init_set(sum, other.sum);
    mpz_init_set(squares, other.squares);
  }
  Impl& operator=(const Impl&) = delete;
  ~Impl() {
    mpz_clear(sum);
    mpz_clear(squares);
  }
};

ExactMoments::ExactMoments() : impl_(std::make_unique<Impl>()) {}
ExactMoments::~ExactMoments() = default;
ExactMoments::ExactMoments(const ExactMoments& other)
    : count_(other.count_), impl_(std::make_unique<Impl>(*other.impl_)) {}
ExactMoments& ExactMoments::operator=(const ExactMoments& other) {
  if (this != &other) {
    count_ = other.count_;
    impl_ = std::make_unique<Impl>(*other.impl_);
  }
  return *this;
}
ExactMoments::ExactMoments(ExactMoments&&) noexcept = default;
ExactMoments& ExactMoments::operator=(ExactMoments&&) noexcept = default;

void ExactMoments::Add(double x) {
  ++count_;
  const Decomposed d = Decompose(x);
  if (d.mantissa == 0) return;
  mpz_t term;
  mpz_init_set_ui(term, d.mantissa);
  mpz_mul_2exp(term, term, static_cast<mp_bitcnt_t>(d.exponent + kSumScale));
  if (d.negative) {
    mpz_sub(impl_->sum, impl_->sum, term);
  } else {
    mpz_add(impl_->sum, impl_->sum, term);
  }
  mpz_set_ui(term, d.mantissa);
  mpz_mul(term, term, term);
  mpz_mul_2exp(term, term,
               static_cast<mp_bitcnt_t>(2 * d.exponent + kSquareScale));
  mpz_add(impl_->squares, impl_->squares, term);
  mpz_clear(term);
}

void ExactMoments::Merge(const ExactMoments& other) {
  count_ += other.count_;
  mpz_add(impl_->sum, impl_->sum, other.impl_->sum);
  mpz_add(impl_->squares, impl_->squares, other.impl_->squares);
}

double ExactMoments::Sum() const {
  Float out(53);
  mpfr_set_z(out.get(), impl_->sum, MPFR_RNDN);
  mpfr_mul_2si(out.get(), out.get(), -kSumScale, MPFR_RNDN);
  return mpfr_get_d(out.get(), MPFR_RNDN);
}

double ExactMoments::Mean() const {
  if (count_ == 0) return 0.0;
  // mpfr_div_z rounds the exact quotient once into the 53-bit target.
  Float num(static_cast<mpfr_prec_t>(mpz_sizeinbase(impl_->sum, 2) + 2));
  mpfr_set_z(num.get(), impl_->sum, MPFR_RNDN);
  mpfr_mul_2si(num.get(), num.get(), -kSumScale, MPFR_RNDN);
  Float out(53);
  mpfr_div_ui(out.get(), num.get(), static_cast<unsigned long>(count_),
              MPFR_RNDN);
  return mpfr_get_d(out.get(), MPFR_RNDN);
}

namespace {

// Exact n * sum(x^2) - sum(x)^2, scaled by 2^2148. Never negative.
void CenteredNumerator(mpz_ptr out, const mpz_t sum, const mpz_t squares,
                       int64_t n) {
  mpz_mul_ui(out, squares, static_cast<unsigned long>(n));
  mpz_t sq;
  mpz_init(sq);
  mpz_mul(sq, sum, sum);
  mpz_sub(out, out, sq);
  mpz_clear(sq);
}

}  // namespace

double ExactMoments::M2() const {
  if (count_ == 0) return 0.0;
  // M2 = (n*Q - S^2) / n.
  mpz_t num;
  mpz_init(num);
  CenteredNumerator(num, impl_->sum, impl_->squares, count_);
  Float exact(static_cast<mpfr_prec_t>(mpz_sizeinbase(num, 2) + 2));
  mpfr_set_z(exact.get(), num, MPFR_RNDN);
  mpz_clear(num);
  mpfr_mul_2si(exact.get(), exact.get(), -kSquareScale, MPFR_RNDN);
  Float out(53);
  mpfr_div_ui(out.get(), exact.get(), static_cast<unsigned long>(count_),
              MPFR_RNDN);
  return mpfr_get_d(out.get(), MPFR_RNDN);
}

namespace {

// Population variance into `out` (precision chosen by caller).
void WideVariance(mpfr_ptr out, const mpz_t sum, const mpz_t squares,
                  int64_t n) {
  mpz_t num;
  mpz_t den;
  mpz_init(num);
  mpz_init_set_ui(den, static_cast<unsigned long>(n));
  CenteredNumerator(num, sum, squares, n);
  mpz_mul(den, den, den);
  Float exact(static_cast<mpfr_prec_t>(mpz_sizeinbase(num, 2) + 2));
  mpfr_set_z(exact.get(), num, MPFR_RNDN);
  mpfr_mul_2si(exact.get(), exact.get(), -kSquareScale, MPFR_RNDN);
  mpfr_div_z(out, exact.get(), den, MPFR_RNDN);
  mpz_clear(num);
  mpz_clear(den);
}

}  // namespace

double ExactMoments::Variance() const {
  if (count_ == 0) return 0.0;
  Float out(53);
  WideVariance(out.get(), impl_->sum, impl_->squares, count_);
  return mpfr_get_d(out.get(), MPFR_RNDN);
}

double ExactMoments::StdDev() const {
  if (count_ == 0) return 0.0;
  Float var(kWide);
  WideVariance(var.get(), impl_->sum, impl_->squares, count_);
  Float out(53);
  mpfr_sqrt(out.get(), var.get(), MPFR_RNDN);
  return mpfr_get_d(out.get(), MPFR_RNDN);
}

bool operator==(const ExactMoments& a, const ExactMoments& b) {
  return a.count_ == b.count_ && mpz_cmp(a.impl_->sum, b.impl_->sum) == 0 &&
         mpz_cmp(a.impl_->squares, b.impl_->squares) == 0;
}

}  // namespace featherpipe
