#include "anosov/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "anosov/counter_rng.hpp"
#include "anosov/errors.hpp"

namespace anosov {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

inline double sign_of(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

// Scratch matrix with 1-based indexing; the classic dense eigenvalue
// algorithms below are written against it verbatim.
struct Scratch {
  int n;
  std::vector<double> a;
  explicit Scratch(int n_) : n(n_), a(static_cast<std::size_t>(n_ + 1) * (n_ + 1), 0.0) {}
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * (n + 1) + j]; }
};

// Parlett-Reinsch balancing; scales are exact powers of two.
void balance(Scratch& a) {
  const int n = a.n;
  const double radix = 2.0;
  const double sqrdx = radix * radix;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 1; i <= n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 1; j <= n; ++j) {
        if (j != i) {
          c += std::fabs(a(j, i));
          r += std::fabs(a(i, j));
        }
      }
      if (c != 0.0 && r != 0.0) {
        double g = r / radix;
        double f = 1.0;
        const double s = c + r;
        while (c < g) {
          f *= radix;
          c *= sqrdx;
        }
        g = r * radix;
        while (c > g) {
          f /= radix;
          c /= sqrdx;
        }
        if ((c + r) / f < 0.95 * s) {
          done = false;
          g = 1.0 / f;
          for (int j = 1; j <= n; ++j) a(i, j) *= g;
          for (int j = 1; j <= n; ++j) a(j, i) *= f;
        }
      }
    }
  }
}

// Reduction to upper Hessenberg form by stabilized elementary similarity
// transformations.
void hessenberg(Scratch& a) {
  const int n = a.n;
  for (int m = 2; m < n; ++m) {
    double x = 0.0;
    int pivot = m;
    for (int j = m; j <= n; ++j) {
      if (std::fabs(a(j, m - 1)) > std::fabs(x)) {
        x = a(j, m - 1);
        pivot = j;
      }
    }
    if (pivot != m) {
      for (int j = m - 1; j <= n; ++j) std::swap(a(pivot, j), a(m, j));
      for (int j = 1; j <= n; ++j) std::swap(a(j, pivot), a(j, m));
    }
    if (x != 0.0) {
      for (int i = m + 1; i <= n; ++i) {
        double y = a(i, m - 1);
        if (y != 0.0) {
          y /= x;
          a(i, m - 1) = y;
          for (int j = m; j <= n; ++j) a(i, j) -= y * a(m, j);
          for (int j = 1; j <= n; ++j) a(j, m) += y * a(j, i);
        }
      }
    }
  }
  for (int i = 3; i <= n; ++i)
    for (int j = 1; j <= i - 2; ++j) a(i, j) = 0.0;
}

// Francis double-shift QR on an upper Hessenberg matrix. Exceptional shifts
// after 10 and 20 stalled sweeps on a block; ConvergenceError past 30 sweeps
// on one block or `max_total` sweeps overall.
void francis_qr(Scratch& a, std::vector<std::complex<double>>& eig, long max_total) {
  const int n = a.n;
  eig.assign(static_cast<std::size_t>(n), {0.0, 0.0});
  double anorm = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = std::max(i - 1, 1); j <= n; ++j) anorm += std::fabs(a(i, j));
  long total_its = 0;
  int nn = n;
  double t = 0.0;
  while (nn >= 1) {
    int its = 0;
    int l;
    do {
      for (l = nn; l >= 2; --l) {
        double s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::fabs(a(l, l - 1)) <= kEps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        eig[nn - 1] = {x + t, 0.0};
        --nn;
      } else {
        double y = a(nn - 1, nn - 1);
        double w = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          double p = 0.5 * (y - x);
          double q = p * p + w;
          double z = std::sqrt(std::fabs(q));
          x += t;
          if (q >= 0.0) {
            z = p + sign_of(z, p);
            const double e1 = x + z;
            const double e2 = (z != 0.0) ? x - w / z : x + z;
            eig[nn - 2] = {e1, 0.0};
            eig[nn - 1] = {e2, 0.0};
          } else {
            eig[nn - 2] = {x + p, z};
            eig[nn - 1] = {x + p, -z};
          }
          nn -= 2;
        } else {
          if (its == 30 || ++total_its > max_total)
            throw ConvergenceError("QR iteration exceeded its cap before deflation");
          if (its == 10 || its == 20) {
            t += x;
            for (int i = 1; i <= nn; ++i) a(i, i) -= x;
            const double s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w = -0.4375 * s * s;
          }
          ++its;
          int m;
          double p = 0.0, q = 0.0, r = 0.0;
          for (m = nn - 2; m >= l; --m) {
            const double z = a(m, m);
            const double rr = x - z;
            const double ss = y - z;
            p = (rr * ss - w) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - rr - ss;
            r = a(m + 2, m + 1);
            const double scale = std::fabs(p) + std::fabs(q) + std::fabs(r);
            p /= scale;
            q /= scale;
            r /= scale;
            if (m == l) break;
            const double u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
            const double v =
                std::fabs(p) *
                (std::fabs(a(m - 1, m - 1)) + std::fabs(z) + std::fabs(a(m + 1, m + 1)));
            if (u <= kEps * v) break;
          }
          for (int i = m + 2; i <= nn; ++i) {
            a(i, i - 2) = 0.0;
            if (i != m + 2) a(i, i - 3) = 0.0;
          }
          for (int k = m; k <= nn - 1; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
              const double xx = std::fabs(p) + std::fabs(q) + std::fabs(r);
              if (xx != 0.0) {
                p /= xx;
                q /= xx;
                r /= xx;
              }
              x = xx;
            } else {
              x = std::fabs(p) + std::fabs(q) + std::fabs(r);
              // p,q,r already scaled by the bulge-start search above; x only
              // matters for the k != m branch writeback.
            }
            double s = sign_of(std::sqrt(p * p + q * q + r * r), p);
            if (s != 0.0) {
              if (k == m) {
                if (l != m) a(k, k - 1) = -a(k, k - 1);
              } else {
                a(k, k - 1) = -s * x;
              }
              p += s;
              x = p / s;
              y = q / s;
              const double z = r / s;
              q /= p;
              r /= p;
              for (int j = k; j <= nn; ++j) {
                double pp = a(k, j) + q * a(k + 1, j);
                if (k != nn - 1) {
                  pp += r * a(k + 2, j);
                  a(k + 2, j) -= pp * z;
                }
                a(k + 1, j) -= pp * y;
                a(k, j) -= pp * x;
              }
              const int mmin = std::min(nn, k + 3);
              for (int i = l; i <= mmin; ++i) {
                double pp = x * a(i, k) + y * a(i, k + 1);
                if (k != nn - 1) {
                  pp += z * a(i, k + 2);
                  a(i, k + 2) -= pp * r;
                }
                a(i, k + 1) -= pp * q;
                a(i, k) -= pp;
              }
            }
          }
        }
      }
    } while (l < nn - 1);
  }
}

std::vector<std::complex<double>> dense_eigenvalues(const IntMatrix& m, long max_total) {
  const int n = static_cast<int>(m.dim());
  Scratch a(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      a(i, j) = m.at(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1))
                    .convert_to<double>();
  balance(a);
  hessenberg(a);
  std::vector<std::complex<double>> eig;
  francis_qr(a, eig, max_total);
  std::sort(eig.begin(), eig.end(), [](const auto& u, const auto& v) {
    const double au = std::abs(u), av = std::abs(v);
    if (au != av) return au > av;
    if (u.real() != v.real()) return u.real() > v.real();
    return u.imag() > v.imag();
  });
  return eig;
}

// --- dense double helpers for the invariant-subspace extraction -----------

struct Dense {
  int n;
  std::vector<double> a;  // row-major, 0-based
  explicit Dense(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_, 0.0) {}
  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

Dense to_dense(const IntMatrix& m) {
  Dense d(static_cast<int>(m.dim()));
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      d(i, j) = m.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j))
                    .convert_to<double>();
  return d;
}

std::vector<double> mat_vec(const Dense& a, const std::vector<double>& v) {
  std::vector<double> out(static_cast<std::size_t>(a.n), 0.0);
  for (int i = 0; i < a.n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < a.n; ++j) acc += a(i, j) * v[static_cast<std::size_t>(j)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void normalize(std::vector<double>& v) {
  const double nv = norm2(v);
  if (nv > 0.0)
    for (double& x : v) x /= nv;
}

double dot(const std::vector<double>& u, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += u[i] * v[i];
  return s;
}

// LU with partial pivoting over real or complex scalars; near-zero pivots
// are bumped so inverse iteration can run on (numerically) singular shifts.
template <class Scalar>
struct Lu {
  int n;
  std::vector<Scalar> a;  // row-major
  std::vector<int> piv;

  explicit Lu(int n_, std::vector<Scalar> entries)
      : n(n_), a(std::move(entries)), piv(static_cast<std::size_t>(n_)) {
    double scale = 0.0;
    for (const Scalar& v : a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;
    for (int k = 0; k < n; ++k) {
      int p = k;
      for (int i = k + 1; i < n; ++i)
        if (std::abs(at(i, k)) > std::abs(at(p, k))) p = i;
      piv[static_cast<std::size_t>(k)] = p;
      if (p != k)
        for (int j = 0; j < n; ++j) std::swap(at(p, j), at(k, j));
      if (std::abs(at(k, k)) < 1e-300 * scale) at(k, k) = Scalar(1e-300 * scale);
      for (int i = k + 1; i < n; ++i) {
        at(i, k) /= at(k, k);
        const Scalar m = at(i, k);
        for (int j = k + 1; j < n; ++j) at(i, j) -= m * at(k, j);
      }
    }
  }

  Scalar& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const Scalar& at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }

  std::vector<Scalar> solve(std::vector<Scalar> b) const {
    for (int k = 0; k < n; ++k) {
      std::swap(b[static_cast<std::size_t>(k)],
                b[static_cast<std::size_t>(piv[static_cast<std::size_t>(k)])]);
      for (int i = k + 1; i < n; ++i)
        b[static_cast<std::size_t>(i)] -= at(i, k) * b[static_cast<std::size_t>(k)];
    }
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j)
        b[static_cast<std::size_t>(i)] -= at(i, j) * b[static_cast<std::size_t>(j)];
      b[static_cast<std::size_t>(i)] /= at(i, i);
    }
    return b;
  }
};

std::vector<double> random_unit_vector(int n, std::uint64_t salt) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    v[static_cast<std::size_t>(i)] =
        counter_uniform(0x5EED5EEDull + salt, static_cast<std::uint64_t>(i)) - 0.5;
  normalize(v);
  return v;
}

}  // namespace

Spectrum compute_spectrum(const IntMatrix& m, double tol) {
  if (!(tol > 0.0) || tol > 1e-4)
    throw std::invalid_argument("unit-circle dead band must lie in (0, 1e-4]");
  Spectrum s;
  s.tol = tol;
  s.eigenvalues = dense_eigenvalues(m, 100L * static_cast<long>(m.dim()));
  for (std::size_t i = 0; i < s.eigenvalues.size(); ++i) {
    const double mod = std::abs(s.eigenvalues[i]);
    if (std::fabs(mod - 1.0) <= tol) {
      s.unit_modulus.push_back(i);
      s.c_system = false;
    } else if (mod > 1.0) {
      s.expanding.push_back(i);
      s.entropy += std::log(mod);
    } else {
      s.contracting.push_back(i);
    }
  }
  return s;
}

double entropy(const IntMatrix& m) {
  const Spectrum s = compute_spectrum(m);
  if (!s.c_system)
    throw NotCSystem("entropy requires a spectrum without unit-modulus eigenvalues");
  return s.entropy;
}

SubspaceSplit invariant_subspaces(const IntMatrix& m, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("residual tolerance must be positive");
  const Spectrum s = compute_spectrum(m);
  if (!s.c_system)
    throw NotCSystem("invariant subspaces require the C-condition to hold");
  const Dense a = to_dense(m);
  const int n = a.n;

  auto real_eigenvector = [&](double lambda, std::uint64_t salt) {
    std::vector<double> shifted = a.a;
    const double mu = lambda + 1e-10 * std::max(1.0, std::fabs(lambda));
    for (int i = 0; i < n; ++i) shifted[static_cast<std::size_t>(i) * n + i] -= mu;
    const Lu<double> lu(n, std::move(shifted));
    std::vector<double> v = random_unit_vector(n, salt);
    for (int iter = 0; iter < 8; ++iter) {
      v = lu.solve(std::move(v));
      normalize(v);
    }
    std::vector<double> av = mat_vec(a, v);
    std::vector<double> resid(av);
    for (int i = 0; i < n; ++i)
      resid[static_cast<std::size_t>(i)] -= lambda * v[static_cast<std::size_t>(i)];
    if (norm2(resid) > tol)
      throw DegenerateMatrix("inverse iteration residual cap exceeded");
    return v;
  };

  // Invariant 2-plane of a complex pair: complex shifted inverse iteration on
  // (A - λI) gives the complex eigenvector v; the plane is span{Re v, Im v}.
  auto plane_basis = [&](std::complex<double> lambda, std::uint64_t salt) {
    using C = std::complex<double>;
    std::vector<C> shifted(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        shifted[static_cast<std::size_t>(i) * n + j] = C(a(i, j), 0.0);
    const C mu = lambda * (1.0 + 1e-12) + C(0.0, 1e-13);
    for (int i = 0; i < n; ++i) shifted[static_cast<std::size_t>(i) * n + i] -= mu;
    const Lu<C> lu(n, std::move(shifted));
    std::vector<C> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      v[static_cast<std::size_t>(i)] =
          C(counter_uniform(0x5EED5EEDull + salt, static_cast<std::uint64_t>(i)) - 0.5,
            counter_uniform(0x5EED5EEDull + salt, static_cast<std::uint64_t>(n + i)) - 0.5);
    for (int iter = 0; iter < 6; ++iter) {
      v = lu.solve(std::move(v));
      double norm = 0.0;
      for (const C& x : v) norm += std::norm(x);
      norm = std::sqrt(norm);
      for (C& x : v) x /= norm;
    }
    std::vector<double> v1(static_cast<std::size_t>(n)), v2(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      v1[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)].real();
      v2[static_cast<std::size_t>(i)] = v[static_cast<std::size_t>(i)].imag();
    }
    normalize(v1);
    const double proj = dot(v2, v1);
    for (int i = 0; i < n; ++i)
      v2[static_cast<std::size_t>(i)] -= proj * v1[static_cast<std::size_t>(i)];
    if (norm2(v2) < 1e-10)
      throw DegenerateMatrix("complex pair produced a degenerate plane");
    normalize(v2);
    // Plane invariance: A v must stay in span{v1, v2}.
    for (const auto& w : {v1, v2}) {
      std::vector<double> aw = mat_vec(a, w);
      const double c1 = dot(aw, v1);
      const double c2 = dot(aw, v2);
      std::vector<double> resid(aw);
      for (int i = 0; i < n; ++i)
        resid[static_cast<std::size_t>(i)] -=
            c1 * v1[static_cast<std::size_t>(i)] + c2 * v2[static_cast<std::size_t>(i)];
      if (norm2(resid) > tol * std::max(1.0, norm2(aw)))
        throw DegenerateMatrix("invariant-plane residual cap exceeded");
    }
    return std::pair{v1, v2};
  };

  SubspaceSplit split;
  auto emit = [&](const std::vector<std::size_t>& indices,
                  std::vector<std::vector<double>>& out) {
    for (std::size_t pos = 0; pos < indices.size(); ++pos) {
      const auto idx = indices[pos];
      const auto lambda = s.eigenvalues[idx];
      if (std::fabs(lambda.imag()) <= 1e-12 * (1.0 + std::abs(lambda))) {
        out.push_back(real_eigenvector(lambda.real(), idx));
      } else if (lambda.imag() > 0.0) {
        auto [v1, v2] = plane_basis(lambda, idx);
        out.push_back(std::move(v1));
        out.push_back(std::move(v2));
      }
      // Negative-imaginary partners are covered by their conjugates' planes.
    }
  };
  emit(s.expanding, split.expanding_basis);
  emit(s.contracting, split.contracting_basis);
  return split;
}

std::vector<std::complex<double>> inverse_spectrum(const Spectrum& s) {
  std::vector<std::complex<double>> inv;
  inv.reserve(s.eigenvalues.size());
  for (const auto& l : s.eigenvalues) inv.push_back(1.0 / l);
  return inv;
}

std::string eigenvalue_csv(const std::vector<std::complex<double>>& eigenvalues) {
  std::string out = "re,im\n";
  char buf[96];
  for (const auto& l : eigenvalues) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g\n", l.real(), l.imag());
    out += buf;
  }
  return out;
}

std::string spectrum_distribution_csv(const IntMatrix& m, bool also_inverse) {
  const Spectrum s = compute_spectrum(m);
  std::string out = eigenvalue_csv(s.eigenvalues);
  if (also_inverse) {
    out += "\n";
    out += eigenvalue_csv(inverse_spectrum(s));
  }
  return out;
}

}  // namespace anosov
