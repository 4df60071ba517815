#pragma once

#include <string>
#include <vector>

#include "wedgewave/gaussian.hpp"

namespace wedgewave {

/// Orthogonal 2x2 map (x,y) -> (ax+by, cx+dy).
struct PlaneIsometry {
    double a = 1.0, b = 0.0;
    double c = 0.0, d = 1.0;

    void apply(double x, double y, double& u, double& v) const {
        u = a * x + b * y;
        v = c * x + d * y;
    }
    double det() const { return a * d - b * c; }
    PlaneIsometry compose(const PlaneIsometry& rhs) const;  // this after rhs
    double max_abs_diff(const PlaneIsometry& rhs) const;
    double orthogonality_defect() const;  // max deviation from Q^T Q = I
};

PlaneIsometry rotation(double angle);
PlaneIsometry reflection_across_x_axis();

/// One summand of an image solution: an isometry of the packet arguments and
/// the sign it carries (reflections -, rotations +).
struct ImageTerm {
    PlaneIsometry isometry;
    int sign = 1;
};

/// The 2N signed isometries for the wedge pi/N: identity and the y=0 mirror,
/// each rotated k times by 2pi/N. Order is (rotation k, its reflected
/// partner), k ascending, identity first. Rejects n_wedge < 1.
std::vector<ImageTerm> build_wedge_images(int n_wedge);

/// Strict interior test for the wedge 0 < theta < pi/N, r > 0. Walls and the
/// origin are outside.
bool inside_wedge(int n_wedge, double x, double y);

/// Diagnostics from checking the dihedral-group structure of an image set.
struct ClosureReport {
    bool pass = true;
    double max_deviation = 0.0;          // worst entrywise defect over all checks
    std::vector<std::string> failures;   // human-readable, empty when pass
};

/// Checks group closure, sign = determinant, the +/- count split, and the
/// identity-first convention, all within tolerance 1e-10. Failures are
/// reported, never thrown.
ClosureReport verify_closure(const std::vector<ImageTerm>& terms);

/// Complete solvable configuration: wedge index, its image terms, the packet.
struct WedgeSystem {
    int n_wedge = 1;
    std::vector<ImageTerm> terms;
    GaussianPacket2D packet;
};

WedgeSystem make_wedge_system(int n_wedge, const GaussianPacket2D& packet);

}  // namespace wedgewave
