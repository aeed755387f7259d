#include "zermelo/normal_form.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

namespace zermelo {

namespace {

Mat j_blocks_padded(const Vec& a, int dim, int offset) {
  Mat m = Mat::Zero(dim, dim);
  int pos = offset;
  for (int k = 0; k < a.size() && pos + 1 < dim; ++k, pos += 2) {
    m(pos, pos + 1) = a[k];
    m(pos + 1, pos) = -a[k];
  }
  return m;
}

int nonzero_count(const std::vector<double>& values) { return static_cast<int>(values.size()); }

Vec padded(const std::vector<double>& values, int m) {
  Vec a = Vec::Zero(m);
  for (int i = 0; i < m && i < static_cast<int>(values.size()); ++i) a[i] = values[i];
  return a;
}

/// Householder element of O(q) sending w to (0, ..., 0, |w|).
Mat tail_rotation(const Vec& w) {
  const int q = static_cast<int>(w.size());
  Mat r = Mat::Identity(q, q);
  if (q == 0) return r;
  Vec target = Vec::Zero(q);
  target[q - 1] = w.norm();
  const Vec u = w - target;
  const double u2 = u.squaredNorm();
  if (u2 < 1e-28 * (1.0 + w.squaredNorm())) return r;
  r -= (2.0 / u2) * (u * u.transpose());
  return r;
}

Mat affine(const Mat& A, const Vec& b_row) {
  const int n = static_cast<int>(A.rows());
  Mat g = Mat::Zero(n + 1, n + 1);
  g.topLeftCorner(n, n) = A;
  g.block(n, 0, 1, n) = b_row.transpose();
  g(n, n) = 1.0;
  return g;
}

int numeric_rank(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s[0] <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > 1e-10 * s[0]) ++rank;
  return rank;
}

/// Orthonormal kernel basis columns by singular-value thresholding.
Mat kernel_basis(const Mat& m) {
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s[0] : 0.0;
  const int n = static_cast<int>(m.cols());
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s[i] > 1e-10 * smax) ++rank;
  if (smax == 0.0) rank = 0;
  return svd.matrixV().rightCols(n - rank);
}

double mink(const Vec& u, const Vec& v) { return -u[0] * v[0] + u.tail(u.size() - 1).dot(v.tail(v.size() - 1)); }

/// Completes `fixed` (Minkowski-orthonormal, signs +-1) to include `count`
/// additional spacelike unit vectors orthogonal to all of them, picked from
/// the standard basis by largest-residual pivoting.
std::vector<Vec> spacelike_complement(const std::vector<Vec>& fixed, int count, int dim) {
  std::vector<Vec> basis = fixed;
  std::vector<double> signs;
  for (const auto& b : fixed) signs.push_back(mink(b, b) < 0 ? -1.0 : 1.0);
  std::vector<Vec> out;
  for (int k = 0; k < count; ++k) {
    Vec best;
    double best_norm = -1.0;
    for (int c = 0; c < dim; ++c) {
      Vec r = Vec::Zero(dim);
      r[c] = 1.0;
      for (std::size_t i = 0; i < basis.size(); ++i)
        r -= (mink(r, basis[i]) / signs[i]) * basis[i];
      const double m = mink(r, r);
      if (m > best_norm) {
        best_norm = m;
        best = r;
      }
    }
    if (best_norm <= 1e-12)
      throw DegeneracyError("spacelike complement construction lost rank");
    best /= std::sqrt(best_norm);
    out.push_back(best);
    basis.push_back(best);
    signs.push_back(1.0);
  }
  return out;
}

/// Matrix of Omega restricted to the span of spacelike orthonormal columns.
Mat restricted_skew(const Mat& omega, const std::vector<Vec>& basis) {
  const int k = static_cast<int>(basis.size());
  Mat r(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) r(i, j) = mink(basis[i], omega * basis[j]);
  return 0.5 * (r - r.transpose());
}

}  // namespace

std::string to_string(NormalFamily f) {
  switch (f) {
    case NormalFamily::Orthogonal: return "o";
    case NormalFamily::Euclidean: return "e";
    case NormalFamily::Lorentz: return "o1n";
  }
  return "?";
}

std::string to_string(NormalSubtype s) {
  switch (s) {
    case NormalSubtype::None: return "none";
    case NormalSubtype::J: return "J";
    case NormalSubtype::S: return "S";
    case NormalSubtype::T: return "T";
    case NormalSubtype::FlatSigmaZero: return "flat-sigma0";
    case NormalSubtype::FlatSigmaNonzero: return "flat-sigma-nonzero";
  }
  return "?";
}

std::string to_string(FlatBranch b) {
  switch (b) {
    case FlatBranch::None: return "none";
    case FlatBranch::Rotation: return "rotation";
    case FlatBranch::Translation: return "translation";
  }
  return "?";
}

Mat minkowski_form(int n_plus_1) {
  Mat e = Mat::Identity(n_plus_1, n_plus_1);
  e(0, 0) = -1.0;
  return e;
}

double lorentz_defect(const Mat& omega) {
  const Mat e = minkowski_form(static_cast<int>(omega.rows()));
  return (omega.transpose() + e * omega * e).cwiseAbs().maxCoeff();
}

Mat BlockNormalForm::normal_matrix() const {
  switch (family) {
    case NormalFamily::Orthogonal:
      return j_blocks_padded(a, ambient, 0);
    case NormalFamily::Euclidean: {
      Mat m = Mat::Zero(n + 1, n + 1);
      if (subtype == NormalSubtype::FlatSigmaNonzero) {
        m.topLeftCorner(n, n) =
            -0.5 * sigma * Mat::Identity(n, n) + j_blocks_padded(a, n, 0);
      } else if (branch == FlatBranch::Rotation) {
        m.topLeftCorner(n, n) = j_blocks_padded(a, n, 0);
      } else {
        m.topLeftCorner(n, n) = j_blocks_padded(a.tail(a.size() - 1), n, 0);
        m(n, n - 1) = extra;
      }
      return m;
    }
    case NormalFamily::Lorentz: {
      Mat m = Mat::Zero(n + 1, n + 1);
      switch (subtype) {
        case NormalSubtype::J:
          m.bottomRightCorner(n, n) = j_blocks_padded(a, n, 0);
          break;
        case NormalSubtype::S:
          m(0, 1) = m(1, 0) = a[0];
          m.bottomRightCorner(n - 1, n - 1) = j_blocks_padded(a.tail(a.size() - 1), n - 1, 0);
          break;
        case NormalSubtype::T:
          m(0, 1) = a[0];
          m(1, 0) = a[0];
          m(1, 2) = a[0];
          m(2, 1) = -a[0];
          m.bottomRightCorner(n - 2, n - 2) = j_blocks_padded(a.tail(a.size() - 1), n - 2, 0);
          break;
        default:
          throw ValidationError("lorentz normal form without subtype");
      }
      return m;
    }
  }
  throw ValidationError("unknown normal-form family");
}

double BlockNormalForm::reconstruction_residual(const Mat& omega) const {
  const Mat g = conjugator;
  return (g * omega * g.inverse() - normal_matrix()).norm();
}

double BlockNormalForm::group_residual() const {
  const Mat& g = conjugator;
  const int d = static_cast<int>(g.rows());
  switch (family) {
    case NormalFamily::Orthogonal:
      return (g.transpose() * g - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
    case NormalFamily::Euclidean: {
      const Mat A = g.topLeftCorner(n, n);
      double res = (A.transpose() * A - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
      res = std::max(res, g.block(0, n, n, 1).cwiseAbs().maxCoeff());
      res = std::max(res, std::abs(g(n, n) - 1.0));
      return res;
    }
    case NormalFamily::Lorentz: {
      const Mat e = minkowski_form(d);
      double res = (g.transpose() * e * g - e).cwiseAbs().maxCoeff();
      res = std::max(res, std::max(0.0, 1.0 - g(0, 0)));
      return res;
    }
  }
  return 0.0;
}

BlockNormalForm skew_normal_form(const Mat& omega) {
  const int l = static_cast<int>(omega.rows());
  const EigenPairing pairing = skew_eigen(omega);
  Mat basis(l, l);
  int col = 0;
  for (const auto& [u, v] : pairing.planes) {
    basis.col(col++) = u;
    basis.col(col++) = v;
  }
  for (int i = 0; i < pairing.kernel.cols(); ++i) basis.col(col++) = pairing.kernel.col(i);

  BlockNormalForm out;
  out.family = NormalFamily::Orthogonal;
  out.subtype = NormalSubtype::None;
  out.ambient = l;
  out.n = l;
  out.a = padded(pairing.values, l / 2);
  out.conjugator = basis.transpose();
  return out;
}

BlockNormalForm euclidean_normal_form(const Mat& Q, const Vec& C, double sigma) {
  const int n = static_cast<int>(Q.rows());
  if (Q.cols() != n || C.size() != n)
    throw ValidationError("euclidean_normal_form: inconsistent dimensions");
  if (skew_defect(Q) > 1e-10 * (1.0 + Q.cwiseAbs().maxCoeff()))
    throw ValidationError("euclidean_normal_form: Q must be skew-symmetric");

  BlockNormalForm out;
  out.family = NormalFamily::Euclidean;
  out.n = n;
  out.ambient = n + 1;
  out.sigma = sigma;

  const EigenPairing pairing = skew_eigen(-Q);
  Mat B(n, n);
  int bcol = 0;
  for (const auto& [u, v] : pairing.planes) {
    B.col(bcol++) = u;
    B.col(bcol++) = v;
  }
  for (int i = 0; i < pairing.kernel.cols(); ++i) B.col(bcol++) = pairing.kernel.col(i);
  const Mat R = B.transpose();  // R (-Q) R^t = rho-blocks

  if (sigma != 0.0) {
    out.subtype = NormalSubtype::FlatSigmaNonzero;
    const int m = (n % 2 == 0) ? n / 2 : (n - 1) / 2;
    out.a = padded(pairing.values, m);
    const Mat lin = Q - 0.5 * sigma * Mat::Identity(n, n);
    const Vec b = -lin.partialPivLu().solve(C);
    out.conjugator = affine(R, b);
    return out;
  }

  out.subtype = NormalSubtype::FlatSigmaZero;
  const int h = nonzero_count(pairing.values);
  const Vec C1 = R * C;

  Mat r_tail = Mat::Identity(n - 2 * h, n - 2 * h);
  double xi = 0.0;
  if (n - 2 * h > 0) {
    const Vec tail = C1.tail(n - 2 * h);
    xi = tail.norm();
    r_tail = tail_rotation(tail);
  }
  Mat A2 = Mat::Identity(n, n);
  A2.bottomRightCorner(n - 2 * h, n - 2 * h) = r_tail;

  Vec b = Vec::Zero(n);
  for (int i = 0; i < h; ++i) {
    const double rho = pairing.values[i];
    const double d1 = C1[2 * i], d2 = C1[2 * i + 1];
    b[2 * i] = -d2 / rho;  // -J D / rho
    b[2 * i + 1] = d1 / rho;
  }

  out.conjugator = affine(Mat::Identity(n, n), b) * affine(A2, Vec::Zero(n)) *
                   affine(R, Vec::Zero(n));
  out.extra = xi;

  const double xi_tol = 1e-9 * (1.0 + C.norm() + Q.norm());
  const int m = (n % 2 == 0) ? n / 2 : (n + 1) / 2;
  if (n % 2 == 0 && xi <= xi_tol) {
    out.branch = FlatBranch::Rotation;
    out.extra = 0.0;
    out.a = padded(pairing.values, m);
  } else {
    // xi takes the a_1 slot; the rotation rates follow.
    out.branch = FlatBranch::Translation;
    std::vector<double> relabeled;
    relabeled.push_back(xi <= xi_tol ? 0.0 : xi);
    for (double v : pairing.values) relabeled.push_back(v);
    if (static_cast<int>(relabeled.size()) > m)
      throw DegeneracyError("euclidean_normal_form: translation residue with full-rank Q");
    out.a = padded(relabeled, m);
    out.extra = relabeled[0];
  }
  return out;
}

namespace {

struct LorentzSignals {
  double gram_min = std::numeric_limits<double>::infinity();
  double max_real_eig = 0.0;
  bool rank_drop = false;
  bool has_kernel = false;
};

LorentzSignals lorentz_signals(const Mat& omega) {
  LorentzSignals s;
  const Mat K = kernel_basis(omega);
  s.has_kernel = K.cols() > 0;
  if (s.has_kernel) {
    const Mat e = minkowski_form(static_cast<int>(omega.rows()));
    const Mat gram_raw = K.transpose() * e * K;
    const Mat gram = 0.5 * (gram_raw + gram_raw.transpose());
    Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
    s.gram_min = es.eigenvalues().minCoeff();
  }
  Eigen::EigenSolver<Mat> es(omega);
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    s.max_real_eig = std::max(s.max_real_eig, std::abs(es.eigenvalues()[i].real()));
  s.rank_drop = numeric_rank(omega * omega) < numeric_rank(omega);
  return s;
}

NormalSubtype classify_from_signals(const LorentzSignals& s, double tol) {
  if (s.has_kernel && s.gram_min < -tol) return NormalSubtype::J;
  // The real-eigenvalue test needs the rank guard: a nilpotent block perturbs
  // into spurious eigenvalues of size eps^(1/3), far above tol.
  if (!s.rank_drop && s.max_real_eig > tol) return NormalSubtype::S;
  if (s.rank_drop || (s.has_kernel && std::abs(s.gram_min) <= tol)) return NormalSubtype::T;
  std::ostringstream os;
  os << "lorentz subtype is numerically ambiguous: gram margin "
     << (s.has_kernel ? s.gram_min : std::nan("")) << ", max real eigenvalue "
     << s.max_real_eig << ", rank drop " << s.rank_drop;
  throw DegeneracyError(os.str());
}

void validate_lorentz(const Mat& omega) {
  if (omega.rows() != omega.cols() || omega.rows() < 3)
    throw ValidationError("lorentz: matrix must be square of size >= 3");
  if (lorentz_defect(omega) > 1e-10 * (1.0 + omega.cwiseAbs().maxCoeff()))
    throw ValidationError("lorentz: matrix does not satisfy Omega^t = -E Omega E");
}

BlockNormalForm lorentz_j_form(const Mat& omega, double tol) {
  const int d = static_cast<int>(omega.rows());
  const int n = d - 1;
  const Mat e = minkowski_form(d);
  const Mat K = kernel_basis(omega);
  const Mat gram_raw = K.transpose() * e * K;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gram_raw + gram_raw.transpose()));
  if (es.eigenvalues().minCoeff() >= -tol)
    throw DegeneracyError("lorentz J form: no timelike kernel direction");
  Vec U = K * es.eigenvectors().col(0);
  U /= std::sqrt(-mink(U, U));
  if (U[0] < 0) U = -U;

  const auto complement = spacelike_complement({U}, n, d);
  const Mat restricted = restricted_skew(omega, complement);
  const EigenPairing pairing = skew_eigen(restricted);

  Mat basis(d, d);
  basis.col(0) = U;
  int col = 1;
  auto push_coords = [&](const Vec& coords) {
    Vec v = Vec::Zero(d);
    for (std::size_t i = 0; i < complement.size(); ++i) v += coords[static_cast<int>(i)] * complement[i];
    basis.col(col++) = v;
  };
  for (const auto& [u, v] : pairing.planes) {
    push_coords(u);
    push_coords(v);
  }
  for (int i = 0; i < pairing.kernel.cols(); ++i) push_coords(pairing.kernel.col(i));

  BlockNormalForm out;
  out.family = NormalFamily::Lorentz;
  out.subtype = NormalSubtype::J;
  out.ambient = d;
  out.n = n;
  out.a = padded(pairing.values, n / 2);
  out.conjugator = e * basis.transpose() * e;  // basis^{-1} for a Lorentz frame
  return out;
}

BlockNormalForm lorentz_s_form(const Mat& omega, double a1) {
  const int d = static_cast<int>(omega.rows());
  const int n = d - 1;
  const Vec C = omega.block(1, 0, n, 1);
  const Mat Q = -omega.block(1, 1, n, n);

  // Null eigenvectors (1, x), (1, y) for eigenvalues +-a1, in closed form.
  const Vec x = (Q + a1 * Mat::Identity(n, n)).partialPivLu().solve(C);
  const Vec y = (Q - a1 * Mat::Identity(n, n)).partialPivLu().solve(C);
  const double scale = 1.0 + C.norm() + Q.norm();
  if (std::abs(x.squaredNorm() - 1.0) > 1e-6 * scale ||
      std::abs(C.dot(x) - a1) > 1e-6 * scale)
    throw DegeneracyError("lorentz S form: eigenvector structure check failed");

  Vec U(d), V(d);
  U[0] = 2.0;
  U.tail(n) = x + y;
  V[0] = 0.0;
  V.tail(n) = x - y;
  const double nrm2 = 2.0 * (1.0 - x.dot(y));
  if (nrm2 <= 0.0) throw DegeneracyError("lorentz S form: U is not timelike");
  U /= std::sqrt(nrm2);
  V /= std::sqrt(nrm2);

  const auto complement = spacelike_complement({U, V}, n - 1, d);
  const EigenPairing pairing = skew_eigen(restricted_skew(omega, complement));

  Mat basis(d, d);
  basis.col(0) = U;
  basis.col(1) = V;
  int col = 2;
  auto push_coords = [&](const Vec& coords) {
    Vec v = Vec::Zero(d);
    for (std::size_t i = 0; i < complement.size(); ++i) v += coords[static_cast<int>(i)] * complement[i];
    basis.col(col++) = v;
  };
  for (const auto& [u, v] : pairing.planes) {
    push_coords(u);
    push_coords(v);
  }
  for (int i = 0; i < pairing.kernel.cols(); ++i) push_coords(pairing.kernel.col(i));

  BlockNormalForm out;
  out.family = NormalFamily::Lorentz;
  out.subtype = NormalSubtype::S;
  out.ambient = d;
  out.n = n;
  const int m = (n % 2 == 0) ? n / 2 : (n + 1) / 2;
  std::vector<double> values;
  values.push_back(a1);
  for (double v : pairing.values) values.push_back(v);
  out.a = padded(values, m);
  out.conjugator = minkowski_form(d) * basis.transpose() * minkowski_form(d);
  return out;
}

BlockNormalForm lorentz_t_form(const Mat& omega) {
  const int d = static_cast<int>(omega.rows());
  const int n = d - 1;
  const Vec C0 = omega.block(1, 0, n, 1);
  const Mat Q0 = -omega.block(1, 1, n, n);
  const double scale = 1.0 + C0.norm() + Q0.norm();

  // Pre-simplification: Q to normal form, tail of C rotated onto its last slot.
  const EigenPairing pq = skew_eigen(Q0);
  const int h = nonzero_count(pq.values);
  if (h == 0) throw DegeneracyError("lorentz T form: Q has no rotation part");
  Mat R(n, n);
  int col = 0;
  for (const auto& [u, v] : pq.planes) {
    R.col(col++) = u;
    R.col(col++) = v;
  }
  for (int i = 0; i < pq.kernel.cols(); ++i) R.col(col++) = pq.kernel.col(i);
  const Mat Rt = R.transpose();  // Rt Q0 R = q-blocks

  Vec C1 = Rt * C0;
  Mat A2 = Mat::Identity(n, n);
  double xi = 0.0;
  if (n - 2 * h > 0) {
    const Vec tail = C1.tail(n - 2 * h);
    xi = tail.norm();
    A2.bottomRightCorner(n - 2 * h, n - 2 * h) = tail_rotation(tail);
  }
  if (xi > 1e-6 * scale)
    throw DegeneracyError("lorentz T form: C is not in the range of Q");
  C1 = A2 * C1;

  // z, z1, z2 from the paired components D_i of C and rates q_i.
  Vec z = Vec::Zero(n), z1 = Vec::Zero(n), z2 = Vec::Zero(n);
  for (int i = 0; i < h; ++i) {
    const double q = pq.values[i];
    const double d1 = C1[2 * i], d2 = C1[2 * i + 1];
    z[2 * i] = -d2 / q;          // -J D / q
    z[2 * i + 1] = d1 / q;
    z1[2 * i] = d1 / (q * q);    // D / q^2
    z1[2 * i + 1] = d2 / (q * q);
    z2[2 * i] = d2 / (q * q * q);  // J D / q^3
    z2[2 * i + 1] = -d1 / (q * q * q);
  }
  if (std::abs(z.squaredNorm() - 1.0) > 1e-6 * scale)
    throw DegeneracyError("lorentz T form: the distinguished kernel vector is not null");
  if (z1.norm() < 1e-12 || z2.norm() < 1e-12)
    throw DegeneracyError("lorentz T form: degenerate chain vectors");

  const double a1 = z1.norm() / z2.norm();
  Vec X1 = Vec::Zero(d), X2 = Vec::Zero(d), X0 = Vec::Zero(d);
  X1.tail(n) = z1 / z1.norm();
  X2.tail(n) = z2 / z2.norm();
  X0[0] = z2.norm() / z1.squaredNorm();
  X0.tail(n) = (z2.norm() / z1.squaredNorm()) * z;
  X0 += X2;

  // Work in the pre-simplified frame.
  Mat g12 = Mat::Identity(d, d);
  g12.bottomRightCorner(n, n) = A2 * Rt;
  const Mat omega1 = g12 * omega * g12.transpose();  // rotations: inverse = transpose

  // Generalized null space: X0, X1, X2 plus the untouched tail directions.
  std::vector<Vec> null_tail;
  for (int j = 2 * h; j < n; ++j) {
    Vec v = Vec::Zero(d);
    v[1 + j] = 1.0;
    null_tail.push_back(v);
  }

  // Complement inside the rotating block.
  std::vector<Vec> fixed = {X0, X1, X2};
  std::vector<Vec> complement;
  {
    std::vector<Vec> basis = fixed;
    std::vector<double> signs = {-1.0, 1.0, 1.0};
    for (int k = 0; k < 2 * (h - 1); ++k) {
      Vec best;
      double best_norm = -1.0;
      for (int c = 0; c < 2 * h; ++c) {
        Vec r = Vec::Zero(d);
        r[1 + c] = 1.0;
        for (std::size_t i = 0; i < basis.size(); ++i)
          r -= (mink(r, basis[i]) / signs[i]) * basis[i];
        const double m = mink(r, r);
        if (m > best_norm) {
          best_norm = m;
          best = r;
        }
      }
      if (best_norm <= 1e-12)
        throw DegeneracyError("lorentz T form: complement construction lost rank");
      best /= std::sqrt(best_norm);
      complement.push_back(best);
      basis.push_back(best);
      signs.push_back(1.0);
    }
  }

  const EigenPairing pairing = skew_eigen(restricted_skew(omega1, complement));
  if (pairing.kernel.cols() > 0)
    throw DegeneracyError("lorentz T form: unexpected kernel in the rotating block");

  Mat basis(d, d);
  basis.col(0) = X0;
  basis.col(1) = X1;
  basis.col(2) = X2;
  int bcol = 3;
  auto push_coords = [&](const Vec& coords) {
    Vec v = Vec::Zero(d);
    for (std::size_t i = 0; i < complement.size(); ++i) v += coords[static_cast<int>(i)] * complement[i];
    basis.col(bcol++) = v;
  };
  for (const auto& [u, v] : pairing.planes) {
    push_coords(u);
    push_coords(v);
  }
  for (const auto& v : null_tail) basis.col(bcol++) = v;

  BlockNormalForm out;
  out.family = NormalFamily::Lorentz;
  out.subtype = NormalSubtype::T;
  out.ambient = d;
  out.n = n;
  const int m = (n % 2 == 0) ? n / 2 : (n - 1) / 2;
  std::vector<double> values;
  values.push_back(a1);
  for (double v : pairing.values) values.push_back(v);
  out.a = padded(values, m);
  const Mat e = minkowski_form(d);
  out.conjugator = (e * basis.transpose() * e) * g12;
  return out;
}

}  // namespace

NormalSubtype lorentz_classify(const Mat& omega) {
  validate_lorentz(omega);
  const double tol = 1e-9 * (1.0 + omega.norm());
  return classify_from_signals(lorentz_signals(omega), tol);
}

BlockNormalForm lorentz_normal_form(const Mat& omega) {
  validate_lorentz(omega);
  const double tol = 1e-9 * (1.0 + omega.norm());
  const NormalSubtype subtype = classify_from_signals(lorentz_signals(omega), tol);
  switch (subtype) {
    case NormalSubtype::J:
      return lorentz_j_form(omega, tol);
    case NormalSubtype::S: {
      Eigen::EigenSolver<Mat> es(omega);
      double a1 = 0.0;
      for (int i = 0; i < es.eigenvalues().size(); ++i)
        a1 = std::max(a1, std::abs(es.eigenvalues()[i].real()));
      return lorentz_s_form(omega, a1);
    }
    case NormalSubtype::T:
      return lorentz_t_form(omega);
    default:
      throw DegeneracyError("lorentz normal form: unsupported subtype");
  }
}

}  // namespace zermelo
