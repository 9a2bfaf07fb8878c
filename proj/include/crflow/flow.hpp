#pragma once

// The generator H(z1, z2) = L(z1) a(z2) d/dz1 + i z2 d/dz2 with
// L(z1) = (e^{alpha z1} - 1)/alpha (z1 when alpha = 0), its closed-form flow
//
//   alpha != 0: ( -(1/alpha) log[1 + (e^{-alpha z1} - 1) e^{I}], z2 e^{it} )
//   alpha  = 0: ( z1 e^{I}, z2 e^{it} ),   I = int_0^t a(z2 e^{i tau}) d tau
//
// an independent RK4 integration of the same ODE, and the rotations R_t.

#include "crflow/mp.hpp"
#include "crflow/series.hpp"
#include "crflow/surface.hpp"

namespace crflow {

struct Point2 {
  Complex z1;
  Complex z2;
};

/// max(|a.z1 - b.z1|, |a.z2 - b.z2|)
Real distance(const Point2& a, const Point2& b);

struct VectorField {
  HoloSeries a;
  Alpha alpha;
};

struct FlowMap {
  HoloSeries a;
  Alpha alpha;
};

VectorField field_of(const ModelSurface& m);
FlowMap flow_of(const ModelSurface& m);

/// L^alpha(z1).
Complex eval_L(const Alpha& alpha, const Complex& z1);

/// (L(z1) a(z2), i z2).
Point2 eval_field(const VectorField& v, const Complex& z1, const Complex& z2);

/// Longest flow time evaluated in one closed-form step; longer times are
/// composed from steps of at most this length.
Real max_flow_step();

/// Closed-form flow. For alpha != 0 the principal log needs
/// Re[1 + (e^{-alpha z1} - 1) e^{I}] > 0; otherwise throws
/// DomainError("log branch").
Point2 flow_closed(const FlowMap& f, const Real& t, const Complex& z1, const Complex& z2);

/// Fixed-step classical RK4 integration of z1' = L(z1) a(z2), z2' = i z2.
/// Throws std::invalid_argument if steps < 1 and DomainError("overflow") on
/// a non-finite state.
Point2 flow_ode(const FlowMap& f, const Real& t, const Complex& z1, const Complex& z2, int steps);

/// R_t(z1, z2) = (z1, z2 e^{it}).
Point2 rotation_flow(const Real& t, const Complex& z1, const Complex& z2);

/// |(phi_h - phi_{-h})/(2h) - H| maximised over both components.
Real generator_check(const FlowMap& f, const VectorField& v, const Complex& z1,
                     const Complex& z2, const Real& h);

}  // namespace crflow
