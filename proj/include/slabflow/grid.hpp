#pragma once

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace slabflow {

class SlabError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a flow map loses invertibility (min J <= 0) or a boundary
/// metric degenerates.
class DegeneracyError : public SlabError {
 public:
  using SlabError::SlabError;
};

/// Raised when NaN/Inf appears in a state or derived field.
class NonFiniteError : public SlabError {
 public:
  using SlabError::SlabError;
};

namespace detail {
class PlaneTransforms;
}

enum class Face { Bottom = 0, Top = 1 };

/// Outward normal sign of the reference slab face: -1 on y3 = 0, +1 on y3 = 1.
inline constexpr double face_sign(Face f) { return f == Face::Top ? 1.0 : -1.0; }

/// Reference slab T^2 x (0,1): n1 x n2 uniform Fourier nodes tangentially and
/// n3 Chebyshev-Gauss-Lobatto nodes vertically (endpoints included).
///
/// Storage order for every field is (k3, k2, k1) with k1 fastest, so each
/// horizontal plane is contiguous.
class Grid {
 public:
  static std::shared_ptr<const Grid> create(int n1, int n2, int n3, bool dealias = true);
  ~Grid();

  Grid(const Grid&) = delete;
  Grid& operator=(const Grid&) = delete;

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int n3() const { return n3_; }
  bool dealias() const { return dealias_; }
  std::size_t plane_size() const { return static_cast<std::size_t>(n1_) * n2_; }
  std::size_t size() const { return plane_size() * n3_; }

  double h1() const { return 1.0 / n1_; }
  double h2() const { return 1.0 / n2_; }
  double h_tangential() const { return std::min(h1(), h2()); }
  /// Smallest node spacing in any direction.
  double h_min() const;

  double y1(int i) const { return static_cast<double>(i) / n1_; }
  double y2(int j) const { return static_cast<double>(j) / n2_; }
  double y3(int k) const { return nodes_y3_[k]; }
  const std::vector<double>& nodes_y3() const { return nodes_y3_; }

  /// Dense vertical differentiation matrices (row-major, n3 x n3) on [0,1].
  const std::vector<double>& d3() const { return d3_; }
  const std::vector<double>& d3sq() const { return d3sq_; }
  /// Clenshaw-Curtis weights on [0,1]; they sum to 1.
  const std::vector<double>& cc_weights() const { return cc_weights_; }

  const detail::PlaneTransforms& transforms() const { return *transforms_; }

  bool same_shape(const Grid& other) const {
    return n1_ == other.n1_ && n2_ == other.n2_ && n3_ == other.n3_;
  }

 private:
  Grid(int n1, int n2, int n3, bool dealias);

  int n1_, n2_, n3_;
  bool dealias_;
  std::vector<double> nodes_y3_;
  std::vector<double> d3_, d3sq_, cc_weights_;
  std::unique_ptr<detail::PlaneTransforms> transforms_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Chebyshev-Gauss-Lobatto nodes (1 - cos(pi j / (n-1))) / 2 on [0,1].
std::vector<double> cgl_nodes_unit(int n);

}  // namespace slabflow
