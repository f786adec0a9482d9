#pragma once

#include "caloron/linalg.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

namespace caloron {

// Components of A = A_i dx^i + A_t dt; A_t = eps * Phi.
struct FieldSample {
  std::array<Mat, 4> a;
  Mat higgs(double eps) const { return a[3] / eps; }
};

// Local gauge presentation. A finite-difference stencil is always evaluated in
// the chart chosen at its centre.
struct Chart {
  int core = -1;            // >= 0: smooth gauge around constituent `core`
  std::uint64_t south = 0;  // bit k: Dirac potential of centre k uses the south patch
  bool operator==(const Chart&) const = default;
};

struct QuadratureCenter {
  Vec3 position = Vec3::Zero();
  double core_scale = 1.0;     // length scale of the non-abelian core
  double annulus_inner = 0.0;  // gluing annulus, zero if none
  double annulus_outer = 0.0;
};

class ConnectionSampler {
 public:
  virtual ~ConnectionSampler() = default;
  virtual int dim() const = 0;
  virtual double epsilon() const = 0;
  virtual bool static_in_t() const { return true; }
  virtual Chart chart_at(const Vec3&) const { return {}; }
  virtual FieldSample sample(const Vec3& x, double t, const Chart& chart) const = 0;
  FieldSample sample(const Vec3& x, double t) const { return sample(x, t, chart_at(x)); }
  virtual std::vector<QuadratureCenter> centers() const = 0;
  // Total magnetic charge as a Cartan element; fixes the 1/r^4 energy tail.
  virtual Mat asymptotic_charge() const = 0;
};

using SamplerPtr = std::shared_ptr<const ConnectionSampler>;

}  // namespace caloron
