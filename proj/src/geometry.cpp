#include "wedgewave/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace wedgewave {

namespace {

// Snap an entry that is within a few ulps of an exact dihedral value
// (0, +-1/2, +-1, +-sqrt2/2, +-sqrt3/2) onto that value. Keeps N=1,2,3,4,6
// matrices exactly equal to their hand-written forms.
double snap_entry(double v) {
    static const double exact[] = {0.0, 0.5, 1.0, std::sqrt(2.0) / 2.0, std::sqrt(3.0) / 2.0};
    for (double e : exact) {
        if (std::abs(v - e) < 1e-12) return e;
        if (std::abs(v + e) < 1e-12) return -e;
    }
    return v;
}

constexpr double kClosureTol = 1e-10;

}  // namespace

PlaneIsometry PlaneIsometry::compose(const PlaneIsometry& rhs) const {
    PlaneIsometry out;
    out.a = a * rhs.a + b * rhs.c;
    out.b = a * rhs.b + b * rhs.d;
    out.c = c * rhs.a + d * rhs.c;
    out.d = c * rhs.b + d * rhs.d;
    return out;
}

double PlaneIsometry::max_abs_diff(const PlaneIsometry& rhs) const {
    return std::max(std::max(std::abs(a - rhs.a), std::abs(b - rhs.b)),
                    std::max(std::abs(c - rhs.c), std::abs(d - rhs.d)));
}

double PlaneIsometry::orthogonality_defect() const {
    const double r1 = std::abs(a * a + c * c - 1.0);
    const double r2 = std::abs(b * b + d * d - 1.0);
    const double r3 = std::abs(a * b + c * d);
    return std::max(r1, std::max(r2, r3));
}

PlaneIsometry rotation(double angle) {
    PlaneIsometry q;
    q.a = std::cos(angle);
    q.b = -std::sin(angle);
    q.c = std::sin(angle);
    q.d = std::cos(angle);
    return q;
}

PlaneIsometry reflection_across_x_axis() {
    return PlaneIsometry{1.0, 0.0, 0.0, -1.0};
}

std::vector<ImageTerm> build_wedge_images(int n_wedge) {
    if (n_wedge < 1) throw std::invalid_argument("build_wedge_images: n_wedge must be >= 1");
    const PlaneIsometry mirror = reflection_across_x_axis();
    std::vector<ImageTerm> terms;
    terms.reserve(2 * static_cast<size_t>(n_wedge));
    for (int k = 0; k < n_wedge; ++k) {
        PlaneIsometry rot = rotation(2.0 * M_PI * k / n_wedge);
        rot.a = snap_entry(rot.a);
        rot.b = snap_entry(rot.b);
        rot.c = snap_entry(rot.c);
        rot.d = snap_entry(rot.d);
        terms.push_back(ImageTerm{rot, +1});
        terms.push_back(ImageTerm{rot.compose(mirror), -1});
    }
    return terms;
}

bool inside_wedge(int n_wedge, double x, double y) {
    if (n_wedge < 1) throw std::invalid_argument("inside_wedge: n_wedge must be >= 1");
    if (x == 0.0 && y == 0.0) return false;
    const double theta = std::atan2(y, x);
    return theta > 0.0 && theta < M_PI / n_wedge;
}

ClosureReport verify_closure(const std::vector<ImageTerm>& terms) {
    ClosureReport report;
    auto fail = [&report](std::string msg) {
        report.pass = false;
        report.failures.push_back(std::move(msg));
    };

    if (terms.empty()) {
        fail("empty term list");
        return report;
    }
    if (terms.size() % 2 != 0) fail("term count is odd");

    const PlaneIsometry identity{};
    {
        const double dev = terms[0].isometry.max_abs_diff(identity);
        report.max_deviation = std::max(report.max_deviation, dev);
        if (dev > kClosureTol || terms[0].sign != +1) fail("terms[0] is not the signed identity");
    }

    int plus = 0, minus = 0;
    for (size_t i = 0; i < terms.size(); ++i) {
        const double det = terms[i].isometry.det();
        const double ortho = terms[i].isometry.orthogonality_defect();
        report.max_deviation = std::max(report.max_deviation, ortho);
        report.max_deviation = std::max(report.max_deviation, std::abs(std::abs(det) - 1.0));
        if (ortho > kClosureTol) fail("term " + std::to_string(i) + " is not orthogonal");
        if (terms[i].sign != +1 && terms[i].sign != -1)
            fail("term " + std::to_string(i) + " has sign outside {+1,-1}");
        if (std::abs(det - terms[i].sign) > kClosureTol)
            fail("term " + std::to_string(i) + " sign does not match its determinant");
        (det > 0.0 ? plus : minus)++;
    }
    if (plus != minus)
        fail("determinant split is " + std::to_string(plus) + "+/" + std::to_string(minus) +
             "-, expected N/N");

    // Closure: every pairwise composition must land on a member, with the
    // product sign matching that member's sign.
    for (size_t i = 0; i < terms.size(); ++i) {
        for (size_t j = 0; j < terms.size(); ++j) {
            const PlaneIsometry prod = terms[i].isometry.compose(terms[j].isometry);
            double best = std::numeric_limits<double>::infinity();
            size_t match = terms.size();
            for (size_t k = 0; k < terms.size(); ++k) {
                const double dev = prod.max_abs_diff(terms[k].isometry);
                if (dev < best) {
                    best = dev;
                    match = k;
                }
            }
            report.max_deviation = std::max(report.max_deviation, best);
            if (best > kClosureTol) {
                fail("composition " + std::to_string(i) + "*" + std::to_string(j) +
                     " leaves the set (deviation " + std::to_string(best) + ")");
            } else if (terms[match].sign != terms[i].sign * terms[j].sign) {
                fail("sign of composition " + std::to_string(i) + "*" + std::to_string(j) +
                     " is not the product of signs");
            }
        }
    }
    return report;
}

WedgeSystem make_wedge_system(int n_wedge, const GaussianPacket2D& packet) {
    packet.validate();
    WedgeSystem system;
    system.n_wedge = n_wedge;
    system.terms = build_wedge_images(n_wedge);
    system.packet = packet;
    return system;
}

}  // namespace wedgewave
