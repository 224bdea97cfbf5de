#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "loopeq/partition.hpp"
#include "loopeq/potential.hpp"

namespace loopeq {

using cplx = std::complex<double>;

struct Sector {
  double center_angle = 0.0;
  double half_width = 0.0;
  int index = 0;
};

// Asymptotic directions where Re V -> +infinity. For rational V these are the
// sectors of the polynomial part of V (empty when V' = R/D has deg R <= deg D).
std::vector<Sector> sectors(const Potential& V);

// One C^1 piece of a contour.
//   ray:  origin + s e^{i angle}, s from 0 to infinity (orientation +1) or back (-1)
//   line: from a to b
//   arc:  center + radius e^{i phi}, phi from phi0 to phi1
struct Segment {
  enum class Kind { ray, line, arc };
  Kind kind = Kind::ray;
  cplx origin{}, a{}, b{};
  double angle = 0.0;
  int orientation = 1;
  cplx center{};
  double radius = 0.0, phi0 = 0.0, phi1 = 0.0;

  static Segment ray(cplx origin, double angle, int orientation);
  static Segment line(cplx a, cplx b);
  static Segment arc(cplx center, double radius, double phi0, double phi1);

  bool closed() const;
  std::string describe() const;
};

struct Endpoint {
  enum class Kind { sector, point, closed };
  Kind kind = Kind::closed;
  int sector = -1;
  cplx point{};
};

struct Contour {
  std::vector<Segment> segments;
  Endpoint start, end;
  std::string label;

  // Ray pair through `through` entering along in_angle, leaving along out_angle.
  static Contour ray_pair(cplx through, double in_angle, double out_angle, std::string label = {});
  static Contour circle(cplx center, double radius, std::string label = {});
  std::string describe() const;
};

// Basis of H_1 with d = V.d() arcs. Polynomial V: gamma_j = R_{j-1} - R_j with R_j
// the ray from 0 along the bisector of sector j (optionally joined by a circular
// connector of radius `connector`), so R = gamma_1 for x^2/2 and R = gamma_1 +
// gamma_2 for x^4/4. Rational V: circles around poles of e^{-V} and rays from
// zeros of e^{-V} to sector 0, plus the polynomial-part arcs between sectors.
std::vector<Contour> basis_arcs(const Potential& V, double connector = 0.0);

struct AdmissibilityReport {
  bool pass = true;
  cplx location{};
  std::string reason;
};
AdmissibilityReport admissibility_check(const Contour& c, const Potential& V, int kmax);

// Homotopy descriptor for deform(): translate by `shift`, scale circle radii by
// `radius_scale`, rotate asymptotic rays by `angle_shift`.
struct Bump {
  cplx shift{};
  double radius_scale = 1.0;
  double angle_shift = 0.0;
};
// Throws std::invalid_argument when a ray leaves its admissible sector or a
// circle changes which poles/zeros it encloses.
Contour deform(const Contour& c, const Bump& bump, const Potential& V);

// Formal combination sum_n c_n gamma^n, compositions n of N over the d arcs.
struct HomologyClass {
  int N = 1;
  std::map<Composition, CRational> terms;
  std::vector<Contour> arcs;
};
// (sum_j c_j gamma_j)^N = sum_n prod_j c_j^{n_j} gamma^n (the convention used by quad).
HomologyClass power_class(const std::vector<Contour>& arcs, const std::vector<CRational>& c, int N);
HomologyClass single_class(const std::vector<Contour>& arcs, const Composition& n, const CRational& c = CRational(1));

// Points along the contour, rays cut at radius `ray_length` from their origin.
std::vector<cplx> polyline(const Contour& c, double ray_length, int points_per_segment = 64);

}  // namespace loopeq
