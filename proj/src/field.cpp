#include "gplab/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "gplab/spectral.hpp"

namespace gplab {

GridSpec GridSpec::make(double half_length, std::size_t n_points) {
  if (!(half_length > 0.0)) throw std::invalid_argument("grid half length must be positive");
  if (n_points < 8 || !std::has_single_bit(n_points)) {
    throw std::invalid_argument("grid size must be a power of two >= 8");
  }
  return GridSpec{half_length, n_points};
}

std::vector<double> GridSpec::nodes() const {
  std::vector<double> out(n_points);
  for (std::size_t j = 0; j < n_points; ++j) out[j] = x(j);
  return out;
}

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};

// int_z^inf sech^4 = 2/3 - t + t^3/3 = (1 - t)^2 (2 + t) / 3, t = tanh z.
double sech4_tail(double z) {
  const double one_minus_t = 2.0 / (1.0 + std::exp(2.0 * z));
  const double t = 1.0 - one_minus_t;
  return one_minus_t * one_minus_t * (2.0 + t) / 3.0;
}

// int_z^inf sech^2 = 1 - tanh z.
double sech2_tail(double z) { return 2.0 / (1.0 + std::exp(2.0 * z)); }

double half_gap(const SolitonParams& p) {
  return 0.5 * std::sqrt(std::max(0.0, 2.0 - p.speed * p.speed));
}

}  // namespace

cplx background_value(const Background& bg, double x) {
  return std::visit(Overloaded{[](const ConstantBackground& c) { return c.value; },
                               [x](const SolitonParams& p) { return eval_soliton(p, x); }},
                    bg);
}

cplx background_derivative(const Background& bg, double x) {
  return std::visit(
      Overloaded{[](const ConstantBackground&) { return cplx(0.0); },
                 [x](const SolitonParams& p) { return eval_soliton_derivative(p, x); }},
      bg);
}

cplx background_second_derivative(const Background& bg, double x) {
  return std::visit(
      Overloaded{[](const ConstantBackground&) { return cplx(0.0); },
                 [x](const SolitonParams& p) { return eval_soliton_second_derivative(p, x); }},
      bg);
}

double background_tail_energy(const Background& bg, double half_length) {
  return std::visit(
      Overloaded{[](const ConstantBackground& c) {
                   if (std::abs(std::abs(c.value) - 1.0) > 1e-12) {
                     throw std::invalid_argument("constant background must have modulus one");
                   }
                   return 0.0;
                 },
                 [half_length](const SolitonParams& p) {
                   // e(u_c) = 2 B^4 sech^4(B y), B = sqrt(2 - c^2) / 2
                   const double b = half_gap(p);
                   if (b == 0.0) return 0.0;
                   return 2.0 * b * b * b *
                          (sech4_tail(b * (half_length + p.shift)) +
                           sech4_tail(b * (half_length - p.shift)));
                 }},
      bg);
}

double background_tail_mass(const Background& bg, double half_length) {
  return std::visit(
      Overloaded{[](const ConstantBackground&) { return 0.0; },
                 [half_length](const SolitonParams& p) {
                   // (|u_c|^2 - 1) / 2 = -B^2 sech^2(B y)
                   const double b = half_gap(p);
                   return -b * (sech2_tail(b * (half_length + p.shift)) +
                                sech2_tail(b * (half_length - p.shift)));
                 }},
      bg);
}

double background_untwisted_momentum(const Background& bg) {
  return canonical_mod_pi(background_momentum_lift(bg));
}

double background_momentum_lift(const Background& bg) {
  return std::visit(
      Overloaded{[](const ConstantBackground&) { return 0.0; },
                 [](const SolitonParams& p) { return soliton_closed_forms(p.speed).momentum; }},
      bg);
}

double background_twist(const Background& bg) {
  return std::visit(Overloaded{[](const ConstantBackground&) { return 0.0; },
                               [](const SolitonParams& p) {
                                 const auto limits = soliton_closed_forms(p.speed).limits;
                                 return std::arg(limits.second / limits.first);
                               }},
                    bg);
}

Background translate_background(const Background& bg, double b) {
  return std::visit(Overloaded{[](const ConstantBackground& c) -> Background { return c; },
                               [b](SolitonParams p) -> Background {
                                 p.shift += b;
                                 return p;
                               }},
                    bg);
}

Background rotate_background(const Background& bg, double alpha) {
  return std::visit(Overloaded{[alpha](ConstantBackground c) -> Background {
                                 c.value *= std::polar(1.0, alpha);
                                 return c;
                               },
                               [alpha](SolitonParams p) -> Background {
                                 p.phase += alpha;
                                 return p;
                               }},
                    bg);
}

Field::Field(GridSpec grid, Background background, std::vector<cplx> perturbation)
    : grid_(grid), background_(background), perturbation_(std::move(perturbation)) {
  if (perturbation_.size() != grid_.n_points) {
    throw std::invalid_argument("perturbation size does not match grid");
  }
  if (const auto* p = std::get_if<SolitonParams>(&background_)) {
    (void)eval_soliton(*p, 0.0);  // validates the speed
  } else {
    (void)background_tail_energy(background_, grid_.half_length);  // modulus one
  }
}

Field Field::from_background(GridSpec grid, Background background) {
  return Field(grid, background, std::vector<cplx>(grid.n_points, cplx(0.0)));
}

bool Field::is_valid() const {
  double sup = 0.0;
  for (const auto& z : perturbation_) sup = std::max(sup, std::abs(z));
  const double threshold = 1e-8 * std::max(1.0, sup);
  return std::abs(perturbation_.front()) <= threshold &&
         std::abs(perturbation_.back()) <= threshold;
}

void Field::require_valid() const {
  if (!is_valid()) {
    throw std::invalid_argument(
        "perturbation has not decayed at the grid boundary; enlarge the domain");
  }
}

std::vector<cplx> Field::background_samples() const {
  std::vector<cplx> out(grid_.n_points);
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = background_value(background_, grid_.x(j));
  return out;
}

std::vector<cplx> Field::values() const {
  std::vector<cplx> out(grid_.n_points);
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = background_value(background_, grid_.x(j)) + perturbation_[j];
  }
  return out;
}

std::vector<cplx> Field::derivative() const {
  auto out = spectral_derivative(perturbation_, grid_, twist());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] += background_derivative(background_, grid_.x(j));
  }
  return out;
}

std::vector<cplx> Field::second_derivative() const {
  auto out = spectral_second_derivative(perturbation_, grid_, twist());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] += background_second_derivative(background_, grid_.x(j));
  }
  return out;
}

Field Field::with_perturbation(std::vector<cplx> perturbation) const {
  return Field(grid_, background_, std::move(perturbation));
}

Field Field::translated(double b) const {
  return Field(grid_, translate_background(background_, b),
               spectral_translate(perturbation_, grid_, b, twist()));
}

Field Field::rotated(double alpha) const {
  const cplx factor = std::polar(1.0, alpha);
  std::vector<cplx> w(perturbation_);
  for (auto& z : w) z *= factor;
  return Field(grid_, rotate_background(background_, alpha), std::move(w));
}

}  // namespace gplab
