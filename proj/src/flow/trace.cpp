#include "morsekit/flow/trace.hpp"

#include <cmath>
#include <sstream>

namespace morsekit::flow {

std::string to_string(Direction d) { return d == Direction::Descending ? "descending" : "ascending"; }

namespace {

struct Stepper {
    const Scene& scene;
    double sign;

    Vec3 unit(const Vec3& x) const {
        const Vec3 v = scene.v(x);
        const double n = v.norm();
        if (!(n > 0) || !std::isfinite(n)) fail(ErrorCode::StepCollapse, "field vanishes or is not finite off the trap balls");
        return sign * v / n;
    }

    Vec3 rk4(const Vec3& x, double h) const {
        const auto& m = scene.model();
        const Vec3 k1 = unit(x);
        const Vec3 k2 = unit(m.project(x + 0.5 * h * k1));
        const Vec3 k3 = unit(m.project(x + 0.5 * h * k2));
        const Vec3 k4 = unit(m.project(x + h * k3));
        return m.project(x + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4));
    }
};

std::string where(const Vec3& x) {
    std::ostringstream os;
    os.precision(6);
    os << "(" << x.x() << ", " << x.y() << ", " << x.z() << ")";
    return os.str();
}

} // namespace

Separatrix trace(const Scene& scene, const Vec3& start, Direction dir, const StopRule& stop, std::optional<std::size_t> origin, Shift origin_shift) {
    const auto& opt = scene.options();
    const double rho = stop.trap_radius > 0 ? stop.trap_radius : opt.trap_radius;
    const double dsign = dir == Direction::Descending ? -1.0 : 1.0;
    Stepper stepper{scene, dsign};

    Separatrix s;
    s.origin = origin;
    s.direction = dir;
    Vec3 x = scene.model().project(start);
    s.samples.push_back(x);
    s.arclength.push_back(0);
    bool armed = !origin.has_value();
    std::size_t next_level = 0;
    const double cap = stop.trap ? std::min(opt.max_step, 0.25 * rho) : opt.max_step;
    double h = cap;
    double len = 0;

    auto passed = [&](double value, double level) { return dsign < 0 ? value < level : value > level; };

    if (stop.levels.empty() && !stop.trap) fail(ErrorCode::InvalidArgument, "trace needs a stopping rule");

    for (;;) {
        if (len > opt.max_arclength) fail(ErrorCode::MaxLengthExceeded, "trace exceeded arc length " + std::to_string(opt.max_arclength) + " at " + where(x));
        // step doubling
        const Vec3 big = stepper.rk4(x, h);
        const Vec3 half = stepper.rk4(stepper.rk4(x, 0.5 * h), 0.5 * h);
        const double err = (big - half).norm();
        if (err > opt.tolerance && h > opt.min_step) {
            h = std::max(opt.min_step, h * std::max(0.2, 0.9 * std::pow(opt.tolerance / err, 0.2)));
            continue;
        }
        if (err > opt.tolerance) fail(ErrorCode::StepCollapse, "step size underflow at " + where(x));
        const double step = h;
        Vec3 nx = half;

        // level crossing inside this step
        if (next_level < stop.levels.size() && passed(scene.f(nx), stop.levels[next_level])) {
            const double level = stop.levels[next_level];
            double lo = 0, hi = step;
            Vec3 at = nx;
            for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
                const double mid = 0.5 * (lo + hi);
                const Vec3 y = stepper.rk4(x, mid);
                if (passed(scene.f(y), level)) {
                    hi = mid;
                    at = y;
                } else {
                    lo = mid;
                }
            }
            s.crossings.push_back(at);
            ++next_level;
            if (next_level == stop.levels.size()) {
                len += hi;
                s.samples.push_back(at);
                s.arclength.push_back(len);
                s.terminus.kind = TerminusKind::Level;
                s.terminus.point = at;
                return s;
            }
        }

        x = nx;
        len += step;
        s.samples.push_back(x);
        s.arclength.push_back(len);

        if (stop.trap) {
            if (auto hit = scene.locate(x, rho)) {
                const bool own = origin && hit->first == *origin && hit->second == origin_shift;
                if (!own || armed) {
                    s.terminus.kind = TerminusKind::Critical;
                    s.terminus.critical = hit->first;
                    s.terminus.shift = hit->second;
                    s.terminus.point = scene.lift(hit->first, hit->second);
                    len += (s.terminus.point - x).norm();
                    s.samples.push_back(s.terminus.point);
                    s.arclength.push_back(len);
                    return s;
                }
            } else {
                armed = true;
            }
        }
        if (err < opt.tolerance / 64) h = std::min(cap, 2 * h);
    }
}

std::string to_csv(const Scene& scene, const Separatrix& s) {
    std::ostringstream os;
    os.precision(12);
    os << "x,y,f,arclength\n";
    for (std::size_t i = 0; i < s.samples.size(); ++i)
        os << s.samples[i].x() << "," << s.samples[i].y() << "," << scene.f(s.samples[i]) << "," << s.arclength[i] << "\n";
    return os.str();
}

} // namespace morsekit::flow
