#include "validation.hpp"

#include "constraints.hpp"
#include "errors.hpp"
#include "kinematics.hpp"
#include "pk1_oracle.hpp"
#include "sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace cswp {

bool ValidationReport::all_passed() const {
  for (const auto& c : criteria)
    if (!c.passed) return false;
  return !criteria.empty();
}

double relative_error(const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& reference, double floor) {
  const double scale = std::max(reference.cwiseAbs().maxCoeff(), floor);
  return (analytic - reference).cwiseAbs().maxCoeff() / scale;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string sci(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*e", digits, v);
  return buf;
}

std::string two_digits(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", v);
  return buf;
}

const std::array<Material, 3>& reference_materials() {
  static const std::array<Material, 3> m{Material::reference(MaterialKind::SaintVenantKirchhoff),
                                         Material::reference(MaterialKind::NeoHooke),
                                         Material::reference(MaterialKind::MooneyRivlin)};
  return m;
}

StrainPrescriptors multiaxial_state() {
  StrainPrescriptors sp;
  sp.eps << 0.02, 0.03, 0.1;
  sp.kappa << 0.01, 0.02, 0.02;
  return sp;
}

std::shared_ptr<const Section> make_square() { return std::make_shared<const Section>(unit_square_patch(3, 5)); }
std::shared_ptr<const Section> make_circle() { return std::make_shared<const Section>(unit_circle_patch(3, 5)); }

struct AuditEntry {
  std::string label;
  std::shared_ptr<const Solution> sol;
  bool has_stiffness = false;
  Mat6 stiffness = Mat6::Zero();
};

struct Context {
  std::vector<AuditEntry> audit;

  void record(std::string label, const Solution& sol) {
    audit.push_back({std::move(label), std::make_shared<const Solution>(sol), false, Mat6::Zero()});
  }
  void record(std::string label, const Solution& sol, const Mat6& C) {
    audit.push_back({std::move(label), std::make_shared<const Solution>(sol), true, C});
  }
  void record(std::string label, std::shared_ptr<const Solution> sol, const Mat6& C) {
    audit.push_back({std::move(label), std::move(sol), true, C});
  }
};

SolveOptions tight(Formulation f, double tol = 1e-11) {
  SolveOptions o;
  o.tolerance = tol;
  o.formulation = f;
  return o;
}

// ---- criterion 1 ----

CriterionResult criterion_residual_table(Context& ctx) {
  CriterionResult r{1, "Newton residual table (square, SVK, reference multi-axial state)", true, 0.0, 1.0, ""};
  const auto t0 = Clock::now();
  const auto section = make_square();
  const Material svk = reference_materials()[0];
  std::array<std::vector<double>, 2> hist;
  std::ostringstream os;
  for (int f = 0; f < 2; ++f) {
    const Formulation form = f == 0 ? Formulation::Pk2 : Formulation::Pk1;
    const Solution sol = newton_solve(section, svk, multiaxial_state(), tight(form, 1e-12));
    ctx.record(f == 0 ? "c1/pk2" : "c1/pk1", sol);
    hist[f] = sol.history();
    os << (f == 0 ? "pk2" : "pk1") << " history:";
    for (double v : hist[f]) os << ' ' << sci(v, 2);
    os << "; ";
    const auto& h = hist[f];
    if (h.size() < 3 || two_digits(h[1]) != "2.6e-01" || two_digits(h[2]) != "5.2e-06") {
      r.passed = false;
      os << "expected 2.6e-01, 5.2e-06 after the first and second update; ";
    }
    if (!(h.back() <= 1e-12)) {
      r.passed = false;
      os << "final residual above 1e-12; ";
    }
  }
  bool same = hist[0].size() == hist[1].size();
  for (std::size_t k = 0; same && k < hist[0].size(); ++k)
    if (hist[0][k] > 1e-10 && std::abs(hist[0][k] - hist[1][k]) > 1e-8 * hist[0][k]) same = false;
  os << (same ? "pk1 and pk2 histories agree to 1e-8 above 1e-10" : "pk1 and pk2 histories differ");
  if (!same) r.passed = false;
  r.seconds = seconds_since(t0);
  r.detail = os.str();
  return r;
}

// ---- criterion 2 ----

StrainPrescriptors random_prescriptors(std::mt19937_64& rng, double bound) {
  std::uniform_real_distribution<double> d(-bound, bound);
  StrainPrescriptors sp;
  for (int q = 0; q < 6; ++q) sp[q] = d(rng);
  return sp;
}

CriterionResult criterion_equivalence(Context& ctx) {
  CriterionResult r{2, "PK1/PK2 equivalence at 20 random states", true, 0.0, 30.0, ""};
  const auto t0 = Clock::now();
  const std::array<std::shared_ptr<const Section>, 2> sections{make_square(), make_circle()};
  std::mt19937_64 rng(20260);
  double worst_u = 0.0, worst_nm = 0.0, worst_c = 0.0;
  std::ostringstream fails;
  for (int i = 0; i < 20; ++i) {
    const auto& section = sections[i % 2];
    const Material& mat = reference_materials()[(i / 2) % 3];
    const StrainPrescriptors sp = random_prescriptors(rng, 0.1);
    try {
      const Solution s2 = newton_solve(section, mat, sp, tight(Formulation::Pk2));
      const Solution s1 = newton_solve(section, mat, sp, tight(Formulation::Pk1));
      const int nu = section->lambda_offset();
      const double du = (s1.state.head(nu) - s2.state.head(nu)).norm() / std::max(s2.state.head(nu).norm(), 1e-300);
      const Vec6 r2 = stress_resultants(s2).stacked(), r1 = stress_resultants(s1).stacked();
      const Mat6 c2 = beam_stiffness(s2).matrix, c1 = beam_stiffness(s1).matrix;
      const double dnm = (r1 - r2).norm() / std::max(r2.norm(), 1e-300);
      const double dc = (c1 - c2).norm() / c2.norm();
      worst_u = std::max(worst_u, du);
      worst_nm = std::max(worst_nm, dnm);
      worst_c = std::max(worst_c, dc);
      ctx.record("c2/pk2/" + std::to_string(i), s2, c2);
      ctx.record("c2/pk1/" + std::to_string(i), s1, c1);
      if (du > 1e-10 || dnm > 1e-8 || dc > 1e-8) {
        r.passed = false;
        fails << " state " << i << " (" << mat.name() << ") out of tolerance;";
      }
    } catch (const Error& e) {
      r.passed = false;
      fails << " state " << i << " failed: " << e.what() << ';';
    }
  }
  r.seconds = seconds_since(t0);
  r.detail = "max rel diff u " + sci(worst_u, 2) + ", (n,m) " + sci(worst_nm, 2) + ", C " + sci(worst_c, 2) + fails.str();
  return r;
}

// ---- criterion 3 ----

CriterionResult criterion_classical(Context& ctx) {
  CriterionResult r{3, "Classical stiffness limits at zero strain", true, 0.0, 0.0, ""};
  const auto t0 = Clock::now();
  const auto section = make_square();
  std::ostringstream os;
  for (const Material& mat : reference_materials()) {
    const bool svk = mat.kind == MaterialKind::SaintVenantKirchhoff;
    const Solution sol = newton_solve(section, mat, StrainPrescriptors{}, tight(Formulation::Pk2));
    const Mat6 C = beam_stiffness(sol).matrix;
    ctx.record("c3/" + mat.name(), sol, C);
    auto within = [](double v, double target, double tol) { return std::abs(v - target) <= tol * target; };
    const double t33 = svk ? 0.01 : 0.015, t44 = svk ? 0.01 : 0.015, t66 = svk ? 0.02 : 0.015;
    const bool ok = within(C(2, 2), 208.16, t33) && within(C(3, 3), 17.35, t44) && within(C(4, 4), 17.35, t44) &&
                    within(C(5, 5), 11.25, t66);
    const double diag = C.diagonal().cwiseAbs().maxCoeff();
    const double coupling = std::max(C.block<3, 3>(0, 3).cwiseAbs().maxCoeff(), C.block<3, 3>(3, 0).cwiseAbs().maxCoeff());
    const bool decoupled = coupling < 1e-6 * diag;
    if (!ok || !decoupled) r.passed = false;
    os << mat.name() << ": C33 " << sci(C(2, 2), 5) << " C44 " << sci(C(3, 3), 5) << " C55 " << sci(C(4, 4), 5)
       << " C66 " << sci(C(5, 5), 5) << " coupling/diag " << sci(coupling / diag, 1) << (ok && decoupled ? "" : " FAIL")
       << "; ";
  }
  r.seconds = seconds_since(t0);
  r.detail = os.str();
  return r;
}

// ---- criterion 4 ----

CriterionResult criterion_sensitivity(Context& ctx) {
  CriterionResult r{4, "Beam stiffness and resultants vs re-solve finite differences", true, 0.0, 60.0, ""};
  const auto t0 = Clock::now();
  const auto section = make_square();
  const double h = 1e-5;
  std::ostringstream os;
  for (const Material& mat : reference_materials()) {
    const SolveOptions opt = tight(Formulation::Pk2, 1e-12);
    const Solution sol = newton_solve(section, mat, multiaxial_state(), opt);
    const Mat6 C = beam_stiffness(sol).matrix;
    const Vec6 s = stress_resultants(sol).stacked();
    ctx.record("c4/" + mat.name(), sol, C);
    Mat6 Cfd;
    Vec6 dpsi;
    const WarmStart warm{sol.state, sol.sp};
    for (int q = 0; q < 6; ++q) {
      StrainPrescriptors sp_p = sol.sp, sp_m = sol.sp;
      sp_p[q] += h;
      sp_m[q] -= h;
      const Solution plus = newton_solve(section, mat, sp_p, opt, warm);
      const Solution minus = newton_solve(section, mat, sp_m, opt, warm);
      Cfd.col(q) = (stress_resultants(plus).stacked() - stress_resultants(minus).stacked()) / (2.0 * h);
      dpsi[q] = (beam_energy(plus) - beam_energy(minus)) / (2.0 * h);
    }
    const double ec = relative_error(C, Cfd);
    const double es = relative_error(s, dpsi);
    if (!(ec < 1e-4) || !(es < 1e-4)) r.passed = false;
    os << mat.name() << ": C err " << sci(ec, 2) << ", (n,m) err " << sci(es, 2) << "; ";
  }
  r.seconds = seconds_since(t0);
  r.detail = os.str();
  return r;
}

// ---- criterion 5 ----

CriterionResult criterion_operators() {
  CriterionResult r{5, "Operator finite-difference suite (2x2 mesh)", true, 0.0, 30.0, ""};
  const auto t0 = Clock::now();
  const auto checks = operator_fd_suite();
  std::ostringstream os;
  double worst = 0.0;
  for (const auto& c : checks) {
    worst = std::max(worst, c.error / c.tolerance);
    if (!c.passed()) {
      r.passed = false;
      os << c.name << " error " << sci(c.error, 2) << " > " << sci(c.tolerance, 0) << "; ";
    }
  }
  r.seconds = seconds_since(t0);
  r.detail = std::to_string(checks.size()) + " checks, worst error/tolerance " + sci(worst, 2) +
             (os.str().empty() ? "" : "; failing: " + os.str());
  return r;
}

// ---- criterion 6 ----

CriterionResult criterion_torsion(Context& ctx) {
  CriterionResult r{6, "Torsion validations (rectangle trend, square slope)", true, 0.0, 0.0, ""};
  const auto t0 = Clock::now();
  std::ostringstream os;

  const auto rect = std::make_shared<const Section>(rectangle_patch(1.0, 0.5, 3, 5));
  const Material soft = Material::svk(1.275, 1.0);
  SweepSpec spec;
  spec.axis = 5;
  spec.from = 0.0;
  spec.to = 0.5;
  spec.samples = 11;
  const auto pk2 = run_sweep(rect, soft, spec, tight(Formulation::Pk2));
  const auto pk1 = run_sweep(rect, soft, spec, tight(Formulation::Pk1));
  bool all_converged = true;
  for (std::size_t i = 0; i < pk2.size(); ++i) {
    if (!pk2[i].converged || !pk1[i].converged) {
      all_converged = false;
      continue;
    }
    ctx.record("c6/rect/pk2/" + std::to_string(i), pk2[i].solution, pk2[i].stiffness);
    ctx.record("c6/rect/pk1/" + std::to_string(i), pk1[i].solution, pk1[i].stiffness);
  }
  if (!all_converged) {
    r.passed = false;
    os << "rectangle sweep did not converge at every sample; ";
  } else {
    const double c0 = pk2[0].stiffness(5, 5);
    bool increasing = true;
    double worst_pair = 0.0;
    os << "rectangle C66/C66(0):";
    for (std::size_t i = 0; i < pk2.size(); ++i) {
      const double v = pk2[i].stiffness(5, 5) / c0;
      os << ' ' << sci(v, 4);
      if (i > 0 && !(pk2[i].stiffness(5, 5) > pk2[i - 1].stiffness(5, 5))) increasing = false;
      worst_pair = std::max(worst_pair, relative_error(pk1[i].stiffness, pk2[i].stiffness));
      worst_pair = std::max(worst_pair, relative_error(pk1[i].resultants.stacked(), pk2[i].resultants.stacked()));
    }
    const double first = pk2[0].stiffness(5, 5) / c0;
    os << "; pk1/pk2 max diff " << sci(worst_pair, 2) << "; ";
    if (std::abs(first - 1.0) > 1e-3 || !increasing || worst_pair > 1e-8) r.passed = false;
    if (!increasing) os << "not strictly increasing; ";
  }

  const auto square = make_square();
  const Material lame = Material::svk(109.9958, 80.194);
  const Solution s0 = newton_solve(square, lame, StrainPrescriptors{}, tight(Formulation::Pk2));
  const Mat6 C0 = beam_stiffness(s0).matrix;
  ctx.record("c6/square/0", s0, C0);
  StrainPrescriptors twist;
  twist.kappa[2] = 1e-4;
  const Solution s1 = newton_solve(square, lame, twist, tight(Formulation::Pk2));
  ctx.record("c6/square/1e-4", s1, beam_stiffness(s1).matrix);
  const double secant = stress_resultants(s1).m[2] / twist.kappa[2];
  const double target = 11.27;
  const bool slope_ok = std::abs(C0(5, 5) - target) <= 0.02 * target && std::abs(secant - target) <= 0.02 * target;
  if (!slope_ok) r.passed = false;
  os << "square dm3/dk3 " << sci(C0(5, 5), 5) << " (secant " << sci(secant, 5) << ")";
  r.seconds = seconds_since(t0);
  r.detail = os.str();
  return r;
}

// ---- criterion 7 ----

CriterionResult criterion_symmetry(const Context& ctx) {
  CriterionResult r{7, "Symmetry and constraints at every converged state", true, 0.0, 0.0, ""};
  const auto t0 = Clock::now();
  double worst_k = 0.0, worst_c = 0.0, worst_l = 0.0, worst_m = 0.0, min_det = 1e300;
  std::ostringstream os;
  for (const auto& e : ctx.audit) {
    const Solution& sol = *e.sol;
    const Section& sec = *sol.section;
    const System sys = assemble_formulation(sol.formulation, sec, sol.material, sol.sp, sol.state, 1);
    const SparseMatrix asym = sys.tangent - SparseMatrix(sys.tangent.transpose());
    double kmax = 0.0, amax = 0.0;
    for (int k = 0; k < sys.tangent.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(sys.tangent, k); it; ++it) kmax = std::max(kmax, std::abs(it.value()));
    for (int k = 0; k < asym.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(asym, k); it; ++it) amax = std::max(amax, std::abs(it.value()));
    const double ks = amax / kmax;
    const double fl = sys.residual.segment<3>(sec.lambda_offset()).norm();
    const double fm = sys.residual.segment<3>(sec.mu_offset()).norm();
    double cs = 0.0;
    if (e.has_stiffness) cs = relative_error(e.stiffness, e.stiffness.transpose());
    for (const auto& el : sec.quadrature.elements)
      for (const BasisEval& be : el.points) min_det = std::min(min_det, point_kinematics(be, sol.state, sol.sp).F.determinant());
    worst_k = std::max(worst_k, ks);
    worst_c = std::max(worst_c, cs);
    worst_l = std::max(worst_l, fl);
    worst_m = std::max(worst_m, fm);
    if (ks > 1e-12 || cs > 1e-8 || fl > 1e-10 || fm > 1e-10) os << ' ' << e.label;
  }
  if (!os.str().empty() || !(min_det > 0.0) || ctx.audit.empty()) r.passed = false;
  r.seconds = seconds_since(t0);
  r.detail = std::to_string(ctx.audit.size()) + " states: max K asym " + sci(worst_k, 2) + ", C asym " +
             sci(worst_c, 2) + ", |f_lambda| " + sci(worst_l, 2) + ", |f_mu| " + sci(worst_m, 2) +
             ", min det F " + sci(min_det, 4) + (os.str().empty() ? "" : "; violations:" + os.str());
  return r;
}

// ---- criterion 8 ----

CriterionResult criterion_fields() {
  CriterionResult r{8, "Field symmetry checks", true, 0.0, 0.0, ""};
  const auto t0 = Clock::now();
  std::ostringstream os;
  const Material svk = reference_materials()[0];
  const int grid = 40;

  const auto square = make_square();
  StrainPrescriptors shear;
  shear.eps[0] = 0.1;
  const Solution ss = newton_solve(square, svk, shear, tight(Formulation::Pk2));
  const auto f = sample_fields(ss, grid);
  double anti = 0.0, u3max = 0.0;
  for (int j = 0; j < grid; ++j)
    for (int i = 0; i < grid; ++i) {
      const double a = f[j * grid + i].u[2], b = f[j * grid + (grid - 1 - i)].u[2];
      anti = std::max(anti, std::abs(a + b));
      u3max = std::max(u3max, std::abs(a));
    }
  const int n1 = square->patch.n1();
  for (int j = 0; j < square->patch.n2(); ++j)
    for (int i = 0; i < n1; ++i)
      anti = std::max(anti, std::abs(ss.state[3 * square->patch.index(i, j) + 2] +
                                     ss.state[3 * square->patch.index(n1 - 1 - i, j) + 2]));
  if (!(anti <= 1e-8) || !(u3max > 1e-3)) r.passed = false;
  os << "shear: max|u3(X1)+u3(-X1)| " << sci(anti, 2) << " (max|u3| " << sci(u3max, 3) << "); ";

  const auto circle = make_circle();
  StrainPrescriptors twist;
  twist.kappa[2] = 0.1;
  const Solution st = newton_solve(circle, svk, twist, tight(Formulation::Pk2));
  double twist_u3 = 0.0;
  for (const auto& s : sample_fields(st, grid)) twist_u3 = std::max(twist_u3, std::abs(s.u[2]));
  if (!(twist_u3 <= 1e-6)) r.passed = false;
  os << "circle twist max|u3| " << sci(twist_u3, 2) << "; ";

  double zero = 0.0;
  for (const auto& sec : {square, circle}) {
    const Solution sz = newton_solve(sec, svk, StrainPrescriptors{}, tight(Formulation::Pk2));
    zero = std::max(zero, sz.state.cwiseAbs().maxCoeff());
    for (const auto& s : sample_fields(sz, grid)) zero = std::max({zero, s.u.cwiseAbs().maxCoeff(), s.von_mises});
  }
  if (zero != 0.0) r.passed = false;
  os << "zero load max field " << sci(zero, 1);
  r.seconds = seconds_since(t0);
  r.detail = os.str();
  return r;
}

double assembly_ratio() {
  const auto section = make_square();
  const Material svk = reference_materials()[0];
  const Solution sol = newton_solve(section, svk, multiaxial_state(), tight(Formulation::Pk2));
  const int reps = 10;
  auto t0 = Clock::now();
  for (int i = 0; i < reps; ++i) assemble_system(*section, svk, sol.sp, sol.state);
  const double t2 = seconds_since(t0);
  t0 = Clock::now();
  for (int i = 0; i < reps; ++i) pk1::assemble_pk1(*section, svk, sol.sp, sol.state);
  const double t1 = seconds_since(t0);
  return t2 / t1;
}

}  // namespace

// ---- operator suite ----

std::vector<OperatorCheck> operator_fd_suite(unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  auto rvec3 = [&](double s) { return Vec3(s * U(rng), s * U(rng), s * U(rng)); };
  std::vector<OperatorCheck> out;
  const double h = 1e-6;

  const Section sec(unit_square_patch(3, 2));
  const BasisEval& be = sec.quadrature.elements[1].points[5];
  const int I = 2, J = 9;
  const double NI = be.N[I], NJ = be.N[J];
  const Vec2 gI = be.grad[I], gJ = be.grad[J];
  StrainPrescriptors sp = random_prescriptors(rng, 0.1);
  const Vec3 u0 = rvec3(0.05);
  Mat32 gu0;
  gu0.col(0) = rvec3(0.05);
  gu0.col(1) = rvec3(0.05);
  auto F_of = [&](const Vec3& d, double N, const Vec2& g, const StrainPrescriptors& s) {
    Mat32 gu = gu0;
    gu.col(0) += g[0] * d;
    gu.col(1) += g[1] * d;
    return deformation_gradient(be.X, u0 + N * d, gu, s);
  };
  const Mat3 F0 = F_of(Vec3::Zero(), NI, gI, sp);
  const Vec3 x0 = current_position(be.X, u0);

  {
    Eigen::Matrix<double, 6, 3> fd;
    for (int c = 0; c < 3; ++c) {
      const Vec3 e = h * Vec3::Unit(c);
      fd.col(c) = (green_lagrange(F_of(e, NI, gI, sp)) - green_lagrange(F_of(-e, NI, gI, sp))) / (2 * h);
    }
    out.push_back({"strain-displacement operator B", relative_error(b_operator(F0, sp.kappa, NI, gI), fd), 1e-6});
  }
  {
    Vec6 S;
    for (int i = 0; i < 6; ++i) S[i] = U(rng);
    Mat3 fd;
    for (int c = 0; c < 3; ++c) {
      const Vec3 e = h * Vec3::Unit(c);
      fd.col(c) = (b_operator(F_of(e, NJ, gJ, sp), sp.kappa, NI, gI).transpose() * S -
                   b_operator(F_of(-e, NJ, gJ, sp), sp.kappa, NI, gI).transpose() * S) /
                  (2 * h);
    }
    out.push_back({"geometric operator (B contraction with S)", relative_error(geometric_operator(sp.kappa, NI, NJ, gI, gJ, S), fd), 1e-6});
  }
  {
    double ee = 0.0, eb = 0.0, ef = 0.0;
    for (int q = 0; q < 6; ++q) {
      StrainPrescriptors p = sp, m = sp;
      p[q] += h;
      m[q] -= h;
      const Mat3 Fp = F_of(Vec3::Zero(), NI, gI, p), Fm = F_of(Vec3::Zero(), NI, gI, m);
      ee = std::max(ee, relative_error(strain_sensitivity(F0, x0, q), (green_lagrange(Fp) - green_lagrange(Fm)) / (2 * h)));
      eb = std::max(eb, relative_error(b_operator_sensitivity(F0, x0, sp.kappa, q, NI, gI),
                                       (b_operator(Fp, p.kappa, NI, gI) - b_operator(Fm, m.kappa, NI, gI)) / (2 * h)));
      ef = std::max(ef, relative_error(partial_deformation_gradient_sensitivity(x0, q), (Fp - Fm) / (2 * h)));
    }
    out.push_back({"strain sensitivity E_,q", ee, 1e-6});
    out.push_back({"operator sensitivity B_,q", eb, 1e-6});
    out.push_back({"partial deformation gradient sensitivity F_,q", ef, 1e-6});
  }
  {
    const Vec3 x = x0 + rvec3(0.05);
    const Vec3 mu = rvec3(1.0);
    Mat3 fdj, fdh;
    for (int c = 0; c < 3; ++c) {
      const Vec3 e = h * Vec3::Unit(c);
      fdj.col(c) = (rotation_constraint(be.X, x + e) - rotation_constraint(be.X, x - e)) / (2 * h);
      fdh.col(c) = (constraint_jacobian(x + e) * mu - constraint_jacobian(x - e) * mu) / (2 * h);
    }
    out.push_back({"constraint Jacobian M", relative_error(constraint_jacobian(x).transpose(), fdj), 1e-7});
    out.push_back({"constraint Hessian Xi", relative_error(constraint_hessian(x, mu), fdh), 1e-6});
  }
  for (const Material& mat : reference_materials()) {
    double es = 0.0, et = 0.0, ep = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      Vec6 E;
      for (int i = 0; i < 6; ++i) E[i] = U(rng);
      E *= 0.2 * (0.5 + 0.5 * std::abs(U(rng))) / E.norm();
      Vec6 fs;
      Mat6 ft;
      for (int i = 0; i < 6; ++i) {
        Vec6 d = Vec6::Zero();
        d[i] = h;
        fs[i] = (energy(mat, E + d) - energy(mat, E - d)) / (2 * h);
        ft.col(i) = (stress(mat, E + d) - stress(mat, E - d)) / (2 * h);
      }
      es = std::max(es, relative_error(stress(mat, E), fs));
      et = std::max(et, relative_error(tangent(mat, E), ft));
      // PK1 tangent against finite differences of P = F S.
      Mat3 F = Mat3::Identity();
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) F(a, b) += 0.1 * U(rng);
      const pk1::Pk1Tangent A = pk1::pk1_tangent(mat, F);
      Eigen::Matrix<double, 9, 9> Aa, Af;
      for (int k = 0; k < 3; ++k)
        for (int L = 0; L < 3; ++L) {
          Mat3 d = Mat3::Zero();
          d(k, L) = h;
          const Mat3 dP = (pk1::pk1_stress(mat, F + d) - pk1::pk1_stress(mat, F - d)) / (2 * h);
          for (int i = 0; i < 3; ++i)
            for (int Jx = 0; Jx < 3; ++Jx) {
              Af(3 * i + Jx, 3 * k + L) = dP(i, Jx);
              Aa(3 * i + Jx, 3 * k + L) = A(i, Jx, k, L);
            }
        }
      ep = std::max(ep, relative_error(Aa, Af));
    }
    out.push_back({mat.name() + " stress vs energy", es, 1e-6});
    out.push_back({mat.name() + " tangent vs stress", et, 1e-5});
    out.push_back({mat.name() + " first Piola tangent vs stress", ep, 1e-5});
  }

  // Global operators on the 2x2 mesh at a random non-equilibrium state.
  VecX state(sec.num_dofs());
  for (Eigen::Index i = 0; i < state.size(); ++i) state[i] = 0.02 * U(rng);
  state.segment<3>(sec.lambda_offset()) = rvec3(0.5);
  state.segment<3>(sec.mu_offset()) = rvec3(0.5);
  for (const Material& mat : reference_materials()) {
    for (const Formulation form : {Formulation::Pk2, Formulation::Pk1}) {
      const std::string tag = mat.name() + (form == Formulation::Pk2 ? " pk2" : " pk1");
      const double hk = 1e-7;
      const System sys = assemble_formulation(form, sec, mat, sp, state, 1);
      Eigen::MatrixXd fd(state.size(), state.size());
      for (Eigen::Index c = 0; c < state.size(); ++c) {
        VecX p = state, m = state;
        p[c] += hk;
        m[c] -= hk;
        fd.col(c) = (assemble_formulation_residual(form, sec, mat, sp, p, 1) -
                     assemble_formulation_residual(form, sec, mat, sp, m, 1)) /
                    (2 * hk);
      }
      out.push_back({tag + " tangent K_hat", relative_error(Eigen::MatrixXd(sys.tangent), fd), 1e-5});
      double eq = 0.0;
      for (int q = 0; q < 6; ++q) {
        StrainPrescriptors p = sp, m = sp;
        p[q] += h;
        m[q] -= h;
        const VecX fq = (assemble_formulation_residual(form, sec, mat, p, state, 1) -
                         assemble_formulation_residual(form, sec, mat, m, state, 1)) /
                        (2 * h);
        const VecX an = form == Formulation::Pk2 ? assemble_sensitivity_rhs(sec, mat, sp, state, q)
                                                 : pk1::assemble_pk1_sensitivity_rhs(sec, mat, sp, state, q);
        eq = std::max(eq, relative_error(an, fq));
      }
      out.push_back({tag + " residual sensitivity F_hat,q", eq, 1e-5});
    }
  }
  return out;
}

ValidationReport run_validation(const std::function<void(const CriterionResult&)>& on_result) {
  ValidationReport report;
  Context ctx;
  auto add = [&](CriterionResult r) {
    while (!r.detail.empty() && (r.detail.back() == ' ' || r.detail.back() == ';')) r.detail.pop_back();
    if (r.time_limit > 0.0 && r.seconds >= r.time_limit) {
      r.passed = false;
      r.detail += "; runtime " + sci(r.seconds, 2) + " s over budget";
    }
    if (on_result) on_result(r);
    report.criteria.push_back(std::move(r));
  };
  auto guarded = [&](int id, const std::string& title, const std::function<CriterionResult()>& fn) {
    try {
      add(fn());
    } catch (const std::exception& e) {
      add(CriterionResult{id, title, false, 0.0, 0.0, std::string("error: ") + e.what()});
    }
  };
  guarded(1, "Newton residual table", [&] { return criterion_residual_table(ctx); });
  guarded(2, "PK1/PK2 equivalence", [&] { return criterion_equivalence(ctx); });
  guarded(3, "Classical stiffness limits", [&] { return criterion_classical(ctx); });
  guarded(4, "Sensitivity correctness", [&] { return criterion_sensitivity(ctx); });
  guarded(5, "Operator finite-difference suite", [&] { return criterion_operators(); });
  guarded(6, "Torsion validations", [&] { return criterion_torsion(ctx); });
  guarded(7, "Symmetry and constraints", [&] { return criterion_symmetry(ctx); });
  guarded(8, "Field symmetry checks", [&] { return criterion_fields(); });
  try {
    report.assembly_time_ratio = assembly_ratio();
  } catch (const std::exception&) {
    report.assembly_time_ratio = 0.0;
  }
  return report;
}

}  // namespace cswp
