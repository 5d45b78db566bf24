#include "hambvp/symmetry.hpp"

#include <cmath>

namespace hambvp {

namespace {

double radical_inverse(int i, int base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * (i % base);
    i /= base;
  }
  return r;
}

template <class Defect>
SymmetryReport run_check(const std::vector<PhasePoint>& samples, double tol, Defect defect) {
  SymmetryReport rep;
  for (const auto& z : samples) {
    try {
      rep.max_defect = std::max(rep.max_defect, defect(z));
      ++rep.evaluated;
    } catch (const DomainError&) {
      rep.domain_failures.push_back(z);
    } catch (const IntegrationError&) {
      rep.domain_failures.push_back(z);
    }
  }
  rep.passed = rep.evaluated > 0 && rep.max_defect <= tol;
  return rep;
}

}  // namespace

PhaseDiffeo identity_diffeo() {
  PhaseDiffeo p;
  p.name = "identity";
  p.apply = [](const PhasePoint& z) { return z; };
  p.inverse = p.apply;
  return p;
}

PhaseDiffeo momentum_flip() {
  PhaseDiffeo p;
  p.name = "momentum-flip";
  p.apply = [](const PhasePoint& z) { return PhasePoint(z.x(), -z.y()); };
  p.inverse = p.apply;
  p.antisymplectic_expected = true;
  return p;
}

PhaseDiffeo plane_rotation(double alpha) {
  auto rot = [](double a) {
    return [a](const PhasePoint& z) {
      const double c = std::cos(a), s = std::sin(a);
      const double x = z.x()[0], y = z.y()[0];
      return PhasePoint(c * x - s * y, s * x + c * y);
    };
  };
  PhaseDiffeo p;
  p.name = "rotation";
  p.apply = rot(alpha);
  p.inverse = rot(-alpha);
  return p;
}

PhaseDiffeo inverse_of(const PhaseDiffeo& psi) {
  PhaseDiffeo p = psi;
  p.name = psi.name + "^-1";
  std::swap(p.apply, p.inverse);
  return p;
}

double diffeo_roundtrip_defect(const PhaseDiffeo& psi, const std::vector<PhasePoint>& samples) {
  double worst = 0.0;
  for (const auto& z : samples) {
    const Vector back = psi.apply(psi.inverse(z)).stacked();
    worst = std::max(worst, (back - z.stacked()).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<PhasePoint> halton_points(const Vector& lo, const Vector& hi, int count) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  const Eigen::Index d = lo.size();
  if (d > 12) throw Error("halton_points: at most 12 dimensions");
  std::vector<PhasePoint> pts;
  for (int i = 1; i <= count; ++i) {
    Vector z(d);
    for (Eigen::Index k = 0; k < d; ++k)
      z[k] = lo[k] + radical_inverse(i, primes[k]) * (hi[k] - lo[k]);
    pts.push_back(PhasePoint::from_stacked(z));
  }
  return pts;
}

SymmetryReport check_ordinary_symmetry(const SymplecticMapFamily& map, const ParameterVector& mu,
                                       const PhaseDiffeo& psi,
                                       const std::vector<PhasePoint>& samples, double tol) {
  return run_check(samples, tol, [&](const PhasePoint& z) {
    const Vector lhs = psi.inverse(map(mu, psi.apply(z))).stacked();
    return (lhs - map(mu, z).stacked()).norm();
  });
}

SymmetryReport check_reversal_symmetry(const SymplecticMapFamily& map, const ParameterVector& mu,
                                       const PhaseDiffeo& psi,
                                       const std::vector<PhasePoint>& samples, double tol) {
  return run_check(samples, tol, [&](const PhasePoint& z) {
    const Vector lhs = map(mu, psi.apply(map(mu, z))).stacked();
    return (lhs - psi.apply(z).stacked()).norm();
  });
}

PairingReport check_reversal_pairing(const CatastropheSet& set, const SymplecticMapFamily& map,
                                     const BoundaryCondition& bc, double tol,
                                     std::optional<std::pair<double, double>> window) {
  const ReducedProblem rp = reduced_unknowns(bc);
  const PhaseDiffeo flip = momentum_flip();
  PairingReport rep;
  for (const auto& s : set.samples) {
    ++rep.checked;
    const PhasePoint z1 = map(s.mu, rp.embed(s.unknowns));
    const Vector partner = rp.unknowns_of(flip.apply(z1));
    if ((partner - s.unknowns).norm() <= tol) {
      ++rep.self_paired;
      continue;
    }
    if (window && (partner[0] < window->first || partner[0] > window->second)) {
      ++rep.unverifiable;
      continue;
    }
    bool found = false;
    for (const Sample* o : set.at(s.grid_index))
      if ((o->unknowns - partner).norm() <= tol) found = true;
    if (!found) rep.violations.push_back(s);
  }
  return rep;
}

}  // namespace hambvp
