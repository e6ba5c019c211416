#include "subcell/overset_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace subcell {

OversetDomain::OversetDomain(double a_, double b_, double c_, double d_)
    : a(a_), b(b_), c(c_), d(d_) {
  if (!(a < b && b < c && c < d))
    throw Error("overset domain needs a < b < c < d");
}

namespace {

Element element_from(const CellOperator& op) {
  Element e;
  e.interval = op.cell;
  e.x = op.nodes.values();
  e.D = op.D;
  e.weights = op.weights;
  e.e_left = op.e_left;
  e.e_right = op.e_right;
  e.diagonal_boundary = op.family == QuadratureFamily::lobatto;
  e.op = op;
  return e;
}

Element element_from(const SubcellOperator& op) {
  Element e;
  e.interval = op.cell;
  e.x = op.x;
  e.D = op.D;
  e.weights = op.weights();
  e.e_left = op.e_left;
  e.e_right = op.e_right;
  e.diagonal_boundary = op.left_family == QuadratureFamily::lobatto &&
                        op.right_family == QuadratureFamily::lobatto;
  e.is_split = true;
  e.split = op.split;
  e.n_left = op.n_left;
  e.weights_left = op.weights_left;
  e.e_mid_left = op.e_mid_left;
  e.e_mid_right = op.e_mid_right;
  e.op = op;
  return e;
}

Element element_from(const ElementOperator& op) {
  return std::visit([](const auto& o) { return element_from(o); }, op);
}

void assign_offsets(MeshSide& side, std::size_t first_slot) {
  side.first_slot = first_slot;
  std::size_t slot = first_slot;
  for (auto& e : side.elements) {
    e.offset = slot;
    slot += e.size();
  }
  side.n_slots = slot - first_slot;
}

Projection make_projection(const MeshSide& side, std::size_t element, const Vector& w) {
  return {element, side.elements[element].offset, w};
}

Projection interpolation_at(const MeshSide& side, std::size_t element, double x) {
  const auto& el = side.elements[element];
  if (el.is_split)
    throw Error("interpolation across a sub-cell point is not defined");
  return make_projection(side, element, lagrange_basis_at(el.x, x));
}

// Where the point p sits relative to the partition of `side`.
struct PointLocation {
  std::size_t element;
  bool on_boundary;  // p coincides with the left end of `element`
};

PointLocation locate_point(const MeshSide& side, double p) {
  for (std::size_t k = 0; k < side.elements.size(); ++k) {
    const auto& iv = side.elements[k].interval;
    const double tol = 1e-12 * iv.length();
    if (k > 0 && std::abs(p - iv.left) <= tol) return {k, true};
    if (p > iv.left + tol && p < iv.right - tol) return {k, false};
  }
  throw Error("point " + std::to_string(p) + " not interior to mesh");
}

std::vector<Interval> uniform_partition(Interval iv, int n) {
  if (n < 1) throw Error("number of elements must be positive");
  std::vector<Interval> cells(static_cast<std::size_t>(n));
  const double h = iv.length() / n;
  for (int k = 0; k < n; ++k) {
    cells[static_cast<std::size_t>(k)] = {iv.left + k * h,
                                          k + 1 == n ? iv.right : iv.left + (k + 1) * h};
  }
  return cells;
}

// Builds the elements of one side, splitting the element that strictly
// contains `cut` when requested.
MeshSide build_side(Interval iv, int n, int degree, double cut, bool split,
                    SubcellFamily family) {
  MeshSide side;
  for (const auto& cell : uniform_partition(iv, n)) {
    const double tol = 1e-12 * cell.length();
    if (split && cut > cell.left + tol && cut < cell.right - tol) {
      side.split_element = side.elements.size();
      side.elements.push_back(
          element_from(make_subcell_operator(degree, cell, cut, family)));
    } else {
      side.elements.push_back(element_from(gauss_lobatto_operator(degree, cell)));
    }
  }
  return side;
}

// One-sided traces at an interior point p of `side`.
void traces_at(const MeshSide& side, double p, Projection& left, Projection& right,
               std::optional<Donor>& donor, MeshSideId id) {
  const auto loc = locate_point(side, p);
  const auto& el = side.elements[loc.element];
  if (loc.on_boundary) {
    left = make_projection(side, loc.element - 1, side.elements[loc.element - 1].e_right);
    right = make_projection(side, loc.element, el.e_left);
  } else if (el.is_split && std::abs(el.split - p) <= 1e-12 * el.interval.length()) {
    left = make_projection(side, loc.element, el.e_mid_left);
    right = make_projection(side, loc.element, el.e_mid_right);
  } else {
    left = interpolation_at(side, loc.element, p);
    right = left;
    donor = Donor{id, loc.element, p, left};
  }
}

void finish_mesh(OversetMesh& mesh) {
  assign_offsets(mesh.u, 0);
  assign_offsets(mesh.v, mesh.u.n_slots);
  const auto& dom = mesh.domain;

  mesh.u_a = make_projection(mesh.u, 0, mesh.u.elements.front().e_left);
  mesh.u_c = make_projection(mesh.u, mesh.u.elements.size() - 1,
                             mesh.u.elements.back().e_right);
  mesh.v_b = make_projection(mesh.v, 0, mesh.v.elements.front().e_left);
  mesh.v_d = make_projection(mesh.v, mesh.v.elements.size() - 1,
                             mesh.v.elements.back().e_right);
  traces_at(mesh.u, dom.b, mesh.u_bL, mesh.u_bR, mesh.donor_b, MeshSideId::u);
  traces_at(mesh.v, dom.c, mesh.v_cL, mesh.v_cR, mesh.donor_c, MeshSideId::v);

  // Counted weights: the u-mesh contributes on [a, b] only.
  mesh.u.counted_weights = Vector::Zero(static_cast<Eigen::Index>(mesh.u.n_slots));
  for (std::size_t k = 0; k < mesh.u.elements.size(); ++k) {
    const auto& el = mesh.u.elements[k];
    const auto off = static_cast<Eigen::Index>(el.offset - mesh.u.first_slot);
    const auto n = static_cast<Eigen::Index>(el.size());
    const double tol = 1e-12 * el.interval.length();
    if (el.interval.right <= dom.b + tol) {
      mesh.u.counted_weights.segment(off, n) = el.weights;
    } else if (el.is_split && std::abs(el.split - dom.b) <= tol) {
      mesh.u.counted_weights.segment(off, n) = el.weights_left;
    } else if (el.interval.left < dom.b - tol) {
      // Unsplit element containing b (baseline): counted whole.
      mesh.u.counted_weights.segment(off, n) = el.weights;
    }
  }
  mesh.v.counted_weights = Vector::Zero(static_cast<Eigen::Index>(mesh.v.n_slots));
  for (const auto& el : mesh.v.elements) {
    mesh.v.counted_weights.segment(static_cast<Eigen::Index>(el.offset - mesh.v.first_slot),
                                   static_cast<Eigen::Index>(el.size())) = el.weights;
  }
}

}  // namespace

std::vector<double> OversetMesh::coordinates() const {
  std::vector<double> x;
  x.reserve(total_nodes());
  for (const auto* side : {&u, &v})
    for (const auto& el : side->elements) x.insert(x.end(), el.x.begin(), el.x.end());
  return x;
}

std::size_t locate_element(const std::vector<Element>& elements, double x) {
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const auto& iv = elements[k].interval;
    if (iv.contains(x, 1e-12 * iv.length())) return k;
  }
  throw Error("point " + std::to_string(x) + " outside the mesh");
}

OversetMesh build_overset_mesh(const OversetDomain& domain, int n_u, int n_v, int degree,
                               SubcellFamily family, SplitPolicy policy) {
  OversetMesh mesh;
  mesh.domain = domain;
  mesh.degree = degree;
  mesh.coupling = CouplingMode::subcell;
  mesh.u = build_side(domain.u_interval(), n_u, degree, domain.b,
                      policy != SplitPolicy::none, family);
  mesh.v = build_side(domain.v_interval(), n_v, degree, domain.c,
                      policy == SplitPolicy::both, family);
  finish_mesh(mesh);
  return mesh;
}

OversetMesh baseline_overset_mesh(const OversetDomain& domain, int n_u, int n_v,
                                  int degree) {
  OversetMesh mesh;
  mesh.domain = domain;
  mesh.degree = degree;
  mesh.coupling = CouplingMode::baseline;
  mesh.u = build_side(domain.u_interval(), n_u, degree, domain.b, false,
                      SubcellFamily::lobatto);
  mesh.v = build_side(domain.v_interval(), n_v, degree, domain.c, false,
                      SubcellFamily::lobatto);
  finish_mesh(mesh);
  return mesh;
}

OversetMesh single_block_mesh(const OversetDomain& domain, const SubcellOperator& op_u,
                              const ElementOperator& op_v) {
  const double tol = 1e-12 * domain.length();
  if (std::abs(op_u.cell.left - domain.a) > tol || std::abs(op_u.cell.right - domain.c) > tol ||
      std::abs(op_u.split - domain.b) > tol)
    throw Error("u-block operator must live on [a, c] with split at b");
  OversetMesh mesh;
  mesh.domain = domain;
  mesh.degree = op_u.degree;
  mesh.coupling = CouplingMode::subcell;
  mesh.u.elements.push_back(element_from(op_u));
  mesh.u.split_element = 0;
  mesh.v.elements.push_back(element_from(op_v));
  const auto& v = mesh.v.elements.front();
  if (std::abs(v.interval.left - domain.b) > tol || std::abs(v.interval.right - domain.d) > tol)
    throw Error("v-block operator must live on [b, d]");
  if (v.is_split) {
    if (std::abs(v.split - domain.c) > tol) throw Error("v-block split must be at c");
    mesh.v.split_element = 0;
  }
  finish_mesh(mesh);
  return mesh;
}

namespace {

double projection_defect(const MeshSide& side, const Projection& p, double x, int degree) {
  const auto& el = side.elements[p.element];
  double worst = 0.0;
  for (int k = 0; k <= degree; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < el.size(); ++i)
      s += p.weights[static_cast<Eigen::Index>(i)] *
           legendre(k, (2.0 * el.x[i] - el.interval.left - el.interval.right) /
                           el.interval.length()).value;
    const double exact = legendre(k, (2.0 * x - el.interval.left - el.interval.right) /
                                         el.interval.length()).value;
    worst = std::max(worst, std::abs(s - exact));
  }
  return worst;
}

// Largest |weight| on nodes lying on the wrong side of x.
double support_defect(const MeshSide& side, const Projection& p, bool left_side) {
  const auto& el = side.elements[p.element];
  if (!el.is_split) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < el.size(); ++i) {
    const bool on_left = i < el.n_left;
    if (on_left != left_side) worst = std::max(worst, std::abs(p.weights[static_cast<Eigen::Index>(i)]));
  }
  return worst;
}

}  // namespace

Report verify_mesh(const OversetMesh& mesh, double tol) {
  Report report("overset mesh");
  const auto& dom = mesh.domain;
  for (const auto* side : {&mesh.u, &mesh.v}) {
    const std::string name = side == &mesh.u ? "u" : "v";
    const Interval iv = side == &mesh.u ? dom.u_interval() : dom.v_interval();
    double gap = std::abs(side->elements.front().interval.left - iv.left) +
                 std::abs(side->elements.back().interval.right - iv.right);
    for (std::size_t k = 1; k < side->elements.size(); ++k)
      gap = std::max(gap, std::abs(side->elements[k].interval.left -
                                   side->elements[k - 1].interval.right));
    report.check(name + "-mesh partitions its interval", gap, tol);
  }
  if (mesh.u.split_element)
    report.check("u split at b", std::abs(mesh.u.elements[*mesh.u.split_element].split - dom.b), tol);
  if (mesh.v.split_element)
    report.check("v split at c", std::abs(mesh.v.elements[*mesh.v.split_element].split - dom.c), tol);

  const int d = mesh.degree;
  report.check("u_a exact", projection_defect(mesh.u, mesh.u_a, dom.a, d), tol);
  report.check("u_bL exact", projection_defect(mesh.u, mesh.u_bL, dom.b, d), tol);
  report.check("u_bR exact", projection_defect(mesh.u, mesh.u_bR, dom.b, d), tol);
  report.check("u_c exact", projection_defect(mesh.u, mesh.u_c, dom.c, d), tol);
  report.check("v_b exact", projection_defect(mesh.v, mesh.v_b, dom.b, d), tol);
  report.check("v_cL exact", projection_defect(mesh.v, mesh.v_cL, dom.c, d), tol);
  report.check("v_cR exact", projection_defect(mesh.v, mesh.v_cR, dom.c, d), tol);
  report.check("v_d exact", projection_defect(mesh.v, mesh.v_d, dom.d, d), tol);
  report.check("u_bL one-sided", support_defect(mesh.u, mesh.u_bL, true), tol);
  report.check("u_bR one-sided", support_defect(mesh.u, mesh.u_bR, false), tol);
  report.check("v_cL one-sided", support_defect(mesh.v, mesh.v_cL, true), tol);
  report.check("v_cR one-sided", support_defect(mesh.v, mesh.v_cR, false), tol);
  return report;
}

void print_mesh_summary(std::ostream& os, const OversetMesh& mesh) {
  os << "coupling " << (mesh.coupling == CouplingMode::subcell ? "subcell" : "baseline")
     << ", degree " << mesh.degree << ", " << mesh.total_nodes() << " nodes\n";
  for (const auto* side : {&mesh.u, &mesh.v}) {
    os << (side == &mesh.u ? "u" : "v") << "-mesh: " << side->elements.size() << " elements";
    if (side->split_element) {
      const auto& el = side->elements[*side->split_element];
      os << ", element " << *side->split_element << " [" << el.interval.left << ", "
         << el.interval.right << "] split at " << el.split;
    }
    os << '\n';
  }
  if (mesh.donor_b) os << "b coupled by interpolation in u-element " << mesh.donor_b->element << '\n';
  if (mesh.donor_c) os << "c coupled by interpolation in v-element " << mesh.donor_c->element << '\n';
}

}  // namespace subcell
