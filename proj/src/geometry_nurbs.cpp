/*
  This file is part of lsiga, an isogeometric level-set solver for
  thermal buckling of stiffened laminated plates with cutouts.

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this software except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0
*/

#include "lsiga/geometry_nurbs.hpp"

#include <algorithm>
#include <cmath>

namespace lsiga {

namespace {

// Homogeneous control point (w*x, w*y, w) used by knot insertion.
using HPoint = Eigen::Vector3d;

// Knot refinement of a clamped curve in homogeneous form; standard
// B-spline knot insertion of the sorted values in X.
void refine_knot_vector(int p, const std::vector<double>& U,
                        const std::vector<HPoint>& Pw,
                        const std::vector<double>& X,
                        std::vector<double>& Ubar, std::vector<HPoint>& Qw) {
  const int n = static_cast<int>(Pw.size()) - 1;
  const int m = n + p + 1;
  const int r = static_cast<int>(X.size()) - 1;

  auto find_span = [&](double u) {
    int lo = p, hi = n;  // span of u among U, clamped convention
    if (u >= U[n + 1]) return n;
    while (lo < hi) {
      const int mid = (lo + hi + 1) / 2;
      if (U[mid] <= u)
        lo = mid;
      else
        hi = mid - 1;
    }
    return lo;
  };

  const int a = find_span(X[0]);
  const int b = find_span(X[r]) + 1;

  Ubar.assign(m + r + 2, 0.0);
  Qw.assign(n + r + 2, HPoint::Zero());

  for (int j = 0; j <= a - p; ++j) Qw[j] = Pw[j];
  for (int j = b - 1; j <= n; ++j) Qw[j + r + 1] = Pw[j];
  for (int j = 0; j <= a; ++j) Ubar[j] = U[j];
  for (int j = b + p; j <= m; ++j) Ubar[j + r + 1] = U[j];

  int i = b + p - 1;
  int k = b + p + r;
  for (int j = r; j >= 0; --j) {
    while (X[j] <= U[i] && i > a) {
      Qw[k - p - 1] = Pw[i - p - 1];
      Ubar[k] = U[i];
      --k;
      --i;
    }
    Qw[k - p - 1] = Qw[k - p];
    for (int l = 1; l <= p; ++l) {
      const int ind = k - p + l;
      double alfa = Ubar[k + l] - X[j];
      if (std::abs(alfa) == 0.0) {
        Qw[ind - 1] = Qw[ind];
      } else {
        alfa /= (Ubar[k + l] - U[i - p + l]);
        Qw[ind - 1] = alfa * Qw[ind - 1] + (1.0 - alfa) * Qw[ind];
      }
    }
    Ubar[k] = X[j];
    --k;
  }
}

std::vector<HPoint> to_homogeneous(const std::vector<Vec2>& cps,
                                   const std::vector<double>& w) {
  std::vector<HPoint> h(cps.size());
  for (size_t i = 0; i < cps.size(); ++i)
    h[i] = HPoint(w[i] * cps[i].x(), w[i] * cps[i].y(), w[i]);
  return h;
}

}  // namespace

KnotVector::KnotVector(std::vector<double> values, int degree)
    : values_(std::move(values)), degree_(degree) {
  if (degree_ < 0) throw std::invalid_argument("knot vector: negative degree");
  if (num_basis() < degree_ + 1)
    throw std::invalid_argument("knot vector: too few knots for degree");
  for (size_t i = 1; i < values_.size(); ++i)
    if (values_[i] < values_[i - 1])
      throw std::invalid_argument("knot vector: not non-decreasing");
  for (int i = 0; i <= degree_; ++i) {
    const size_t last = values_.size() - 1;
    if (values_[i] != values_.front() || values_[last - i] != values_.back())
      throw std::invalid_argument("knot vector: not open (clamped)");
  }
}

int KnotVector::find_span(double xi) const {
  if (xi < front() || xi > back())
    throw std::domain_error("find_span: parameter outside knot range");
  const int n = num_basis();
  if (xi >= values_[n]) return n - 1;  // right-end convention
  int lo = degree_, hi = n - 1;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (values_[mid] <= xi)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

Eigen::MatrixXd KnotVector::basis_derivatives(double xi, int max_order) const {
  const int p = degree_;
  const int span = find_span(xi);
  if (values_[span + 1] - values_[span] <= 0.0)
    throw NumericalError("basis_derivatives: degenerate (zero-length) span");

  const std::vector<double>& U = values_;
  Eigen::MatrixXd ndu(p + 1, p + 1);
  std::vector<double> left(p + 1), right(p + 1);

  ndu(0, 0) = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = xi - U[span + 1 - j];
    right[j] = U[span + j] - xi;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu(j, r) = right[r + 1] + left[j - r];
      const double temp = ndu(r, j - 1) / ndu(j, r);
      ndu(r, j) = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    ndu(j, j) = saved;
  }

  Eigen::MatrixXd ders = Eigen::MatrixXd::Zero(max_order + 1, p + 1);
  for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);

  const int nk = std::min(p, max_order);
  Eigen::MatrixXd a(2, p + 1);
  for (int r = 0; r <= p; ++r) {
    int s1 = 0, s2 = 1;
    a(0, 0) = 1.0;
    for (int k = 1; k <= nk; ++k) {
      double d = 0.0;
      const int rk = r - k, pk = p - k;
      if (r >= k) {
        a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
        d = a(s2, 0) * ndu(rk, pk);
      }
      const int j1 = (rk >= -1) ? 1 : -rk;
      const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
        d += a(s2, j) * ndu(rk + j, pk);
      }
      if (r <= pk) {
        a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
        d += a(s2, k) * ndu(r, pk);
      }
      ders(k, r) = d;
      std::swap(s1, s2);
    }
  }

  double fac = p;
  for (int k = 1; k <= nk; ++k) {
    for (int j = 0; j <= p; ++j) ders(k, j) *= fac;
    fac *= (p - k);
  }
  return ders;
}

std::vector<KnotVector::Span> KnotVector::nonempty_spans() const {
  std::vector<Span> spans;
  const int n = num_basis();
  for (int i = degree_; i < n; ++i)
    if (values_[i + 1] > values_[i]) spans.push_back({i, values_[i], values_[i + 1]});
  return spans;
}

std::vector<double> KnotVector::span_midpoints() const {
  std::vector<double> mids;
  for (const Span& s : nonempty_spans()) mids.push_back(0.5 * (s.lo + s.hi));
  return mids;
}

std::vector<double> KnotVector::greville() const {
  std::vector<double> g(num_basis());
  for (int i = 0; i < num_basis(); ++i) {
    double sum = 0.0;
    for (int k = 1; k <= degree_; ++k) sum += values_[i + k];
    g[i] = (degree_ > 0) ? sum / degree_ : 0.5 * (values_[i] + values_[i + 1]);
  }
  return g;
}

NurbsPatch::NurbsPatch(KnotVector knots_xi, KnotVector knots_eta,
                       std::vector<Vec2> control_points,
                       std::vector<double> weights)
    : knots_xi_(std::move(knots_xi)),
      knots_eta_(std::move(knots_eta)),
      cps_(std::move(control_points)),
      w_(std::move(weights)) {
  const size_t expect = static_cast<size_t>(n()) * m();
  if (cps_.size() != expect || w_.size() != expect)
    throw std::invalid_argument("patch: control net does not match basis counts");
  for (double w : w_)
    if (!(w > 0.0)) throw std::invalid_argument("patch: nonpositive weight");
}

NurbsPatch NurbsPatch::rectangle(double lx, double ly, int degree) {
  const int p = degree;
  std::vector<double> knots(2 * (p + 1));
  for (int i = 0; i <= p; ++i) {
    knots[i] = 0.0;
    knots[p + 1 + i] = 1.0;
  }
  KnotVector kv(knots, p);
  std::vector<Vec2> cps;
  std::vector<double> w;
  for (int j = 0; j <= p; ++j)
    for (int i = 0; i <= p; ++i) {
      cps.emplace_back(lx * i / p, ly * j / p);
      w.push_back(1.0);
    }
  return NurbsPatch(kv, kv, std::move(cps), std::move(w));
}

NurbsPatch NurbsPatch::quarter_annulus(double r0, double r1) {
  KnotVector arc({0, 0, 0, 1, 1, 1}, 2);
  KnotVector rad({0, 0, 1, 1}, 1);
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<Vec2> cps;
  std::vector<double> w;
  for (double r : {r0, r1}) {
    cps.emplace_back(0.0, r);
    cps.emplace_back(r, r);
    cps.emplace_back(r, 0.0);
    w.insert(w.end(), {1.0, s, 1.0});
  }
  return NurbsPatch(arc, rad, std::move(cps), std::move(w));
}

SurfaceBasis NurbsPatch::surface_basis(double xi, double eta) const {
  const int p = knots_xi_.degree(), q = knots_eta_.degree();
  SurfaceBasis out;

  const Eigen::MatrixXd du = knots_xi_.basis_derivatives(xi, 1);
  const Eigen::MatrixXd dv = knots_eta_.basis_derivatives(eta, 1);
  out.span_xi = knots_xi_.find_span(xi);
  out.span_eta = knots_eta_.find_span(eta);
  out.i0 = out.span_xi - p;
  out.j0 = out.span_eta - q;

  const int nn = (p + 1) * (q + 1);
  Eigen::VectorXd Nw(nn), Nwu(nn), Nwv(nn);
  double W = 0.0, Wu = 0.0, Wv = 0.0;
  int k = 0;
  for (int j = 0; j <= q; ++j)
    for (int i = 0; i <= p; ++i, ++k) {
      const double wij = weight(out.i0 + i, out.j0 + j);
      Nw[k] = du(0, i) * dv(0, j) * wij;
      Nwu[k] = du(1, i) * dv(0, j) * wij;
      Nwv[k] = du(0, i) * dv(1, j) * wij;
      W += Nw[k];
      Wu += Nwu[k];
      Wv += Nwv[k];
    }

  out.R = Nw / W;
  out.dRdxi = (Nwu - Wu / W * Nw) / W;
  out.dRdeta = (Nwv - Wv / W * Nw) / W;
  return out;
}

void NurbsPatch::map_parametric(double xi, double eta, Vec2& point,
                                Mat2& J) const {
  const SurfaceBasis b = surface_basis(xi, eta);
  const int p = knots_xi_.degree(), q = knots_eta_.degree();
  point.setZero();
  J.setZero();
  int k = 0;
  for (int j = 0; j <= q; ++j)
    for (int i = 0; i <= p; ++i, ++k) {
      const Vec2& P = control_point(b.i0 + i, b.j0 + j);
      point += b.R[k] * P;
      J.col(0) += b.dRdxi[k] * P;
      J.col(1) += b.dRdeta[k] * P;
    }
}

NurbsPatch::MapResult NurbsPatch::surface_map(double xi, double eta) const {
  MapResult r;
  Mat2 Jp;
  map_parametric(xi, eta, r.point, Jp);

  const int sx = knots_xi_.find_span(xi);
  const int sy = knots_eta_.find_span(eta);
  const double hx = knots_xi_.values()[sx + 1] - knots_xi_.values()[sx];
  const double hy = knots_eta_.values()[sy + 1] - knots_eta_.values()[sy];
  r.J.col(0) = Jp.col(0) * 0.5 * hx;
  r.J.col(1) = Jp.col(1) * 0.5 * hy;
  if (r.J.determinant() <= 0.0)
    throw NumericalError("surface_map: inverted element (det(J) <= 0)");
  return r;
}

NurbsPatch NurbsPatch::h_refined(int levels) const {
  if (levels < 0) throw std::invalid_argument("h_refined: negative level count");
  NurbsPatch patch = *this;

  for (int lev = 0; lev < levels; ++lev) {
    // xi direction: refine each eta-row of the homogeneous net
    {
      const std::vector<double> X = patch.knots_xi_.span_midpoints();
      const int p = patch.knots_xi_.degree();
      const int nold = patch.n(), mold = patch.m();
      std::vector<double> Ubar;
      std::vector<Vec2> new_cps;
      std::vector<double> new_w;
      for (int j = 0; j < mold; ++j) {
        std::vector<Vec2> row(nold);
        std::vector<double> rw(nold);
        for (int i = 0; i < nold; ++i) {
          row[i] = patch.control_point(i, j);
          rw[i] = patch.weight(i, j);
        }
        std::vector<HPoint> Qw;
        refine_knot_vector(p, patch.knots_xi_.values(), to_homogeneous(row, rw),
                           X, Ubar, Qw);
        for (const HPoint& h : Qw) {
          new_cps.emplace_back(h.x() / h.z(), h.y() / h.z());
          new_w.push_back(h.z());
        }
      }
      // rows were appended contiguously, so the grid layout is preserved
      patch = NurbsPatch(KnotVector(Ubar, p), patch.knots_eta_,
                         std::move(new_cps), std::move(new_w));
    }
    // eta direction: refine each xi-column
    {
      const std::vector<double> X = patch.knots_eta_.span_midpoints();
      const int q = patch.knots_eta_.degree();
      const int nold = patch.n(), mold = patch.m();
      std::vector<double> Vbar;
      std::vector<std::vector<HPoint>> cols(nold);
      int mnew = 0;
      for (int i = 0; i < nold; ++i) {
        std::vector<Vec2> col(mold);
        std::vector<double> cw(mold);
        for (int j = 0; j < mold; ++j) {
          col[j] = patch.control_point(i, j);
          cw[j] = patch.weight(i, j);
        }
        refine_knot_vector(q, patch.knots_eta_.values(), to_homogeneous(col, cw),
                           X, Vbar, cols[i]);
        mnew = static_cast<int>(cols[i].size());
      }
      std::vector<Vec2> new_cps(static_cast<size_t>(nold) * mnew);
      std::vector<double> new_w(new_cps.size());
      for (int j = 0; j < mnew; ++j)
        for (int i = 0; i < nold; ++i) {
          const HPoint& h = cols[i][j];
          new_cps[i + j * nold] = Vec2(h.x() / h.z(), h.y() / h.z());
          new_w[i + j * nold] = h.z();
        }
      patch = NurbsPatch(patch.knots_xi_, KnotVector(Vbar, q),
                         std::move(new_cps), std::move(new_w));
    }
  }
  return patch;
}

Vec2 NurbsPatch::invert_point(const Vec2& x, const Vec2& guess) const {
  Vec2 uv = guess;
  const double lo_x = knots_xi_.front(), hi_x = knots_xi_.back();
  const double lo_y = knots_eta_.front(), hi_y = knots_eta_.back();
  const double scale = 1.0 + x.norm();

  for (int it = 0; it < 60; ++it) {
    Vec2 s;
    Mat2 J;
    map_parametric(uv.x(), uv.y(), s, J);
    const Vec2 res = s - x;
    if (res.norm() < 1e-13 * scale) return uv;
    const Vec2 step = J.fullPivLu().solve(res);
    uv -= step;
    uv.x() = std::clamp(uv.x(), lo_x, hi_x);
    uv.y() = std::clamp(uv.y(), lo_y, hi_y);
  }
  Vec2 s;
  Mat2 J;
  map_parametric(uv.x(), uv.y(), s, J);
  if ((s - x).norm() < 1e-9 * scale) return uv;
  throw NumericalError("invert_point: Newton iteration did not converge");
}

std::vector<int> NurbsPatch::active_control_points(int span_xi,
                                                   int span_eta) const {
  const int p = knots_xi_.degree(), q = knots_eta_.degree();
  std::vector<int> ids;
  ids.reserve((p + 1) * (q + 1));
  for (int j = 0; j <= q; ++j)
    for (int i = 0; i <= p; ++i)
      ids.push_back((span_xi - p + i) + (span_eta - q + j) * n());
  return ids;
}

NurbsCurve::NurbsCurve(KnotVector knots, std::vector<Vec2> control_points,
                       std::vector<double> weights)
    : knots_(std::move(knots)),
      cps_(std::move(control_points)),
      w_(std::move(weights)) {
  if (cps_.size() != static_cast<size_t>(knots_.num_basis()) ||
      w_.size() != cps_.size())
    throw std::invalid_argument("curve: control polygon does not match basis count");
  for (double w : w_)
    if (!(w > 0.0)) throw std::invalid_argument("curve: nonpositive weight");
}

void NurbsCurve::map_parametric(double xi, Vec2& point, Vec2& velocity) const {
  const int p = knots_.degree();
  const int span = knots_.find_span(xi);
  const Eigen::MatrixXd d = knots_.basis_derivatives(xi, 1);

  double W = 0.0, Wu = 0.0;
  Vec2 Aw = Vec2::Zero(), Awu = Vec2::Zero();
  for (int i = 0; i <= p; ++i) {
    const int a = span - p + i;
    Aw += d(0, i) * w_[a] * cps_[a];
    Awu += d(1, i) * w_[a] * cps_[a];
    W += d(0, i) * w_[a];
    Wu += d(1, i) * w_[a];
  }
  point = Aw / W;
  velocity = (Awu - Wu / W * Aw) / W;
}

NurbsCurve NurbsCurve::h_refined(int levels) const {
  NurbsCurve c = *this;
  for (int lev = 0; lev < levels; ++lev) {
    const std::vector<double> X = c.knots_.span_midpoints();
    std::vector<double> Ubar;
    std::vector<HPoint> Qw;
    refine_knot_vector(c.knots_.degree(), c.knots_.values(),
                       to_homogeneous(c.cps_, c.w_), X, Ubar, Qw);
    std::vector<Vec2> cps;
    std::vector<double> w;
    for (const HPoint& h : Qw) {
      cps.emplace_back(h.x() / h.z(), h.y() / h.z());
      w.push_back(h.z());
    }
    c = NurbsCurve(KnotVector(Ubar, c.knots_.degree()), std::move(cps),
                   std::move(w));
  }
  return c;
}

PatchMesh build_mesh(const NurbsPatch& patch) {
  PatchMesh mesh;
  const auto sx = patch.knots_xi().nonempty_spans();
  const auto sy = patch.knots_eta().nonempty_spans();
  mesh.nx = static_cast<int>(sx.size());
  mesh.ny = static_cast<int>(sy.size());
  mesh.elements.reserve(static_cast<size_t>(mesh.nx) * mesh.ny);

  for (int j = 0; j < mesh.ny; ++j)
    for (int i = 0; i < mesh.nx; ++i) {
      PatchMesh::Element e;
      e.ix = i;
      e.iy = j;
      e.span_xi = sx[i].index;
      e.span_eta = sy[j].index;
      e.xi0 = sx[i].lo;
      e.xi1 = sx[i].hi;
      e.eta0 = sy[j].lo;
      e.eta1 = sy[j].hi;
      Mat2 J;
      patch.map_parametric(e.xi0, e.eta0, e.corners[0], J);
      patch.map_parametric(e.xi1, e.eta0, e.corners[1], J);
      patch.map_parametric(e.xi1, e.eta1, e.corners[2], J);
      patch.map_parametric(e.xi0, e.eta1, e.corners[3], J);
      mesh.elements.push_back(e);
    }
  return mesh;
}

}  // namespace lsiga
