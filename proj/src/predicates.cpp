#include "loopforest/predicates.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace loopforest::geometry {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kEps = std::numeric_limits<double>::epsilon() / 2;
// Forward error bounds for the plain double evaluation (Shewchuk's
// ccwerrboundA / iccerrboundA).
constexpr double kOrientBound = (3.0 + 16.0 * kEps) * kEps;
constexpr double kIncircleBound = (10.0 + 96.0 * kEps) * kEps;

template <typename T>
int sign_of(const T& v) {
  return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

int orient2d_exact(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Rational ax(a[0]), ay(a[1]);
  const Rational det = (Rational(b[0]) - ax) * (Rational(c[1]) - ay) -
                       (Rational(b[1]) - ay) * (Rational(c[0]) - ax);
  return sign_of(det);
}

int incircle_exact(const Vec2& a, const Vec2& b, const Vec2& c,
                   const Vec2& d) {
  const Rational dx(d[0]), dy(d[1]);
  const Rational adx = Rational(a[0]) - dx, ady = Rational(a[1]) - dy;
  const Rational bdx = Rational(b[0]) - dx, bdy = Rational(b[1]) - dy;
  const Rational cdx = Rational(c[0]) - dx, cdy = Rational(c[1]) - dy;
  const Rational alift = adx * adx + ady * ady;
  const Rational blift = bdx * bdx + bdy * bdy;
  const Rational clift = cdx * cdx + cdy * cdy;
  const Rational det = alift * (bdx * cdy - cdx * bdy) +
                       blift * (cdx * ady - adx * cdy) +
                       clift * (adx * bdy - bdx * ady);
  return sign_of(det);
}

}  // namespace

int orient2d(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double left = (b[0] - a[0]) * (c[1] - a[1]);
  const double right = (b[1] - a[1]) * (c[0] - a[0]);
  const double det = left - right;
  const double bound = kOrientBound * (std::abs(left) + std::abs(right));
  if (std::abs(det) > bound) {
    return sign_of(det);
  }
  return orient2d_exact(a, b, c);
}

int incircle(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const double adx = a[0] - d[0], ady = a[1] - d[1];
  const double bdx = b[0] - d[0], bdy = b[1] - d[1];
  const double cdx = c[0] - d[0], cdy = c[1] - d[1];

  const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
  const double cdxady = cdx * ady, adxcdy = adx * cdy;
  const double adxbdy = adx * bdy, bdxady = bdx * ady;
  const double alift = adx * adx + ady * ady;
  const double blift = bdx * bdx + bdy * bdy;
  const double clift = cdx * cdx + cdy * cdy;

  const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) +
                     clift * (adxbdy - bdxady);
  const double permanent =
      (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
      (std::abs(cdxady) + std::abs(adxcdy)) * blift +
      (std::abs(adxbdy) + std::abs(bdxady)) * clift;
  if (std::abs(det) > kIncircleBound * permanent) {
    return sign_of(det);
  }
  return incircle_exact(a, b, c, d);
}

int incircle_perturbed(const Vec2& a, const Vec2& b, const Vec2& c,
                       const Vec2& d, std::array<std::int64_t, 4> index) {
  const int s = incircle(a, b, c, d);
  if (s != 0) return s;
  // d/d(lift_r) of the 4x4 determinant is (-1)^(r + 2) times the
  // orientation of the three remaining rows, in row order.
  const std::array<const Vec2*, 4> rows{&a, &b, &c, &d};
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return index[i] < index[j]; });
  for (int r : order) {
    std::array<const Vec2*, 3> rest{};
    int k = 0;
    for (int i = 0; i < 4; ++i) {
      if (i != r) rest[k++] = rows[i];
    }
    const int minor = orient2d(*rest[0], *rest[1], *rest[2]);
    if (minor != 0) return (r % 2 == 0) ? minor : -minor;
  }
  return 0;
}

int orientation_sign(std::span<const double> coords, int dim) {
  const auto n = static_cast<std::size_t>(dim);
  if (dim == 2) {
    return orient2d({coords[0], coords[1]}, {coords[2], coords[3]},
                    {coords[4], coords[5]});
  }
  // Edge vectors as rows, then Gaussian elimination. Exact rationals are
  // cheap at these sizes and keep the sign trustworthy.
  std::vector<Rational> m(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m[i * n + j] = Rational(coords[(i + 1) * n + j]) - Rational(coords[j]);
    }
  }
  int sign = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot * n + col] == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m[pivot * n + j], m[col * n + j]);
      }
      sign = -sign;
    }
    if (m[col * n + col] < 0) sign = -sign;
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m[i * n + col] == 0) continue;
      const Rational factor = m[i * n + col] / m[col * n + col];
      for (std::size_t j = col; j < n; ++j) {
        m[i * n + j] -= factor * m[col * n + j];
      }
    }
  }
  return sign;
}

double simplex_volume(std::span<const double> coords, int ambient_dim) {
  const auto n = static_cast<std::size_t>(ambient_dim);
  const std::size_t k = coords.size() / n - 1;
  if (k == 0) return 1.0;
  if (k == 1) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double e = coords[n + j] - coords[j];
      s += e * e;
    }
    return std::sqrt(s);
  }
  std::vector<double> edges(k * n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      edges[i * n + j] = coords[(i + 1) * n + j] - coords[j];
    }
  }
  double factorial = 1.0;
  for (std::size_t i = 2; i <= k; ++i) factorial *= static_cast<double>(i);
  if (k == n) {
    // Square case: |det| directly, which is better conditioned than Gram.
    std::vector<double> m = edges;
    double det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t pivot = col;
      for (std::size_t i = col + 1; i < n; ++i) {
        if (std::abs(m[i * n + col]) > std::abs(m[pivot * n + col])) pivot = i;
      }
      if (m[pivot * n + col] == 0.0) return 0.0;
      if (pivot != col) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(m[pivot * n + j], m[col * n + j]);
        }
      }
      det *= m[col * n + col];
      for (std::size_t i = col + 1; i < n; ++i) {
        const double f = m[i * n + col] / m[col * n + col];
        for (std::size_t j = col; j < n; ++j) m[i * n + j] -= f * m[col * n + j];
      }
    }
    return std::abs(det) / factorial;
  }
  std::vector<double> gram(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t c = 0; c < n; ++c) s += edges[i * n + c] * edges[j * n + c];
      gram[i * k + j] = s;
    }
  }
  // Cholesky; the Gram matrix is positive semidefinite.
  double det = 1.0;
  for (std::size_t col = 0; col < k; ++col) {
    const double p = gram[col * k + col];
    if (p <= 0.0) return 0.0;
    det *= p;
    for (std::size_t i = col + 1; i < k; ++i) {
      const double f = gram[i * k + col] / p;
      for (std::size_t j = col; j < k; ++j) gram[i * k + j] -= f * gram[col * k + j];
    }
  }
  return std::sqrt(det) / factorial;
}

}  // namespace loopforest::geometry
