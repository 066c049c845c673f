#include "soflab/pingpong.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <boost/rational.hpp>
#include <json.hpp>

#include "soflab/rng.hpp"

namespace soflab {

namespace {

constexpr double kSignEps = 1e-12;
constexpr std::uint64_t kGridSeed = 0x9B5EEDCAFEull;

double norm_of(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

void sign_normalize(std::vector<double>& v) {
    for (double x : v) {
        if (std::abs(x) > kSignEps) {
            if (x < 0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

ProjectivePoint make_projective_point(std::vector<double> raw) {
    double n = norm_of(raw);
    if (!(n > 0) || !std::isfinite(n)) throw InvalidInput("projective point needs a nonzero vector");
    for (double& x : raw) x /= n;
    sign_normalize(raw);
    return {std::move(raw)};
}

double proj_metric(const ProjectivePoint& p, const ProjectivePoint& q) {
    if (p.v.size() != q.v.size()) throw InvalidInput("projective points of different dimension");
    // sqrt(1 - <p,q>²) computed as the rejection norm ‖p - <p,q>q‖, which
    // stays accurate near zero where the direct form cancels.
    double c = std::clamp(dot(p.v, q.v), -1.0, 1.0);
    double s = 0;
    for (std::size_t i = 0; i < p.v.size(); ++i) {
        double r = p.v[i] - c * q.v[i];
        s += r * r;
    }
    return std::min(1.0, std::sqrt(s));
}

double point_hyperplane_distance(const ProjectivePoint& p, const ProjHyperplane& h) {
    return std::abs(dot(p.v, h.normal));
}

IntMatrix imat_identity(int d) {
    IntMatrix m(d, std::vector<BigInt>(d, 0));
    for (int i = 0; i < d; ++i) m[i][i] = 1;
    return m;
}

IntMatrix imat_from_rows(const std::vector<std::vector<std::int64_t>>& rows) {
    IntMatrix m;
    for (const auto& r : rows) {
        if (r.size() != rows.size()) throw InvalidInput("integer matrix must be square");
        m.emplace_back(r.begin(), r.end());
    }
    return m;
}

IntMatrix imat_mul(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t d = a.size();
    IntMatrix out(d, std::vector<BigInt>(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < d; ++j) out[i][j] += a[i][k] * b[k][j];
        }
    return out;
}

namespace {

BigInt imat_det_sub(const IntMatrix& m, std::uint32_t rows, std::uint32_t cols) {
    const int d = static_cast<int>(m.size());
    int r = -1;
    for (int i = 0; i < d; ++i)
        if (rows & (1u << i)) { r = i; break; }
    if (r < 0) return 1;
    BigInt acc = 0;
    int sign = 1;
    for (int c = 0; c < d; ++c) {
        if (!(cols & (1u << c))) continue;
        if (m[r][c] != 0)
            acc += sign * m[r][c] * imat_det_sub(m, rows & ~(1u << r), cols & ~(1u << c));
        sign = -sign;
    }
    return acc;
}

}  // namespace

BigInt imat_det(const IntMatrix& a) {
    std::uint32_t all = (1u << a.size()) - 1;
    return imat_det_sub(a, all, all);
}

IntMatrix imat_inverse(const IntMatrix& a) {
    BigInt det = imat_det(a);
    if (det != 1 && det != -1)
        throw InvalidInput("exact inverse requires det = ±1, got " + det.str());
    const int d = static_cast<int>(a.size());
    std::uint32_t all = (1u << d) - 1;
    IntMatrix adj(d, std::vector<BigInt>(d, 0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            BigInt minor = imat_det_sub(a, all & ~(1u << i), all & ~(1u << j));
            BigInt sign = ((i + j) % 2 == 0) ? 1 : -1;
            adj[j][i] = sign * minor * det;  // det = det^{-1} when det = ±1
        }
    return adj;
}

IntMatrix imat_pow(const IntMatrix& a, unsigned e) {
    IntMatrix result = imat_identity(static_cast<int>(a.size()));
    IntMatrix base = a;
    while (e > 0) {
        if (e & 1u) result = imat_mul(result, base);
        base = imat_mul(base, base);
        e >>= 1u;
    }
    return result;
}

bool imat_is_projective_identity(const IntMatrix& a) {
    const std::size_t d = a.size();
    const BigInt& lam = a[0][0];
    if (lam != 1 && lam != -1) return false;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            if (i == j ? a[i][j] != lam : a[i][j] != 0) return false;
        }
    return true;
}

ProjectivePoint apply_matrix(const IntMatrix& m, const ProjectivePoint& p) {
    const std::size_t d = m.size();
    if (p.v.size() != d) throw InvalidInput("dimension mismatch applying matrix");
    std::vector<double> out(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        double acc = 0;
        for (std::size_t j = 0; j < d; ++j) acc += m[i][j].convert_to<double>() * p.v[j];
        out[i] = acc;
    }
    return make_projective_point(std::move(out));
}

namespace {

Eigen::MatrixXd to_eigen(const IntMatrix& m) {
    const auto d = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) a(i, j) = m[i][j].convert_to<double>();
    return a;
}

struct ExtremeVectors {
    std::vector<double> top;
    std::vector<double> bottom;
    bool topOk = false, bottomOk = false;
};

// Real eigenvectors for the strictly largest- and smallest-modulus
// eigenvalues, with eigen-equation residual checks.
ExtremeVectors extreme_eigenvectors(const Eigen::MatrixXd& a, int topIdx, int botIdx,
                                    double lamTop, double lamBot) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    ExtremeVectors out;
    auto extract = [&](int idx, double lam, std::vector<double>& dst) {
        Eigen::VectorXcd vc = es.eigenvectors().col(idx);
        double imagNorm = vc.imag().norm(), realNorm = vc.real().norm();
        if (imagNorm > 1e-8 * std::max(1.0, realNorm)) return false;
        Eigen::VectorXd v = vc.real();
        if (v.norm() == 0) return false;
        double residual = (a * v - lam * v).norm() / (std::max(1.0, std::abs(lam)) * v.norm());
        if (residual > 1e-7) return false;
        dst.assign(v.data(), v.data() + v.size());
        return true;
    };
    out.topOk = extract(topIdx, lamTop, out.top);
    out.bottomOk = extract(botIdx, lamBot, out.bottom);
    return out;
}

}  // namespace

HyperbolicClassification classify_hyperbolic(const IntMatrix& m, double tol) {
    BigInt det = imat_det(m);
    if (det != 1 && det != -1)
        throw InvalidInput("classification requires det = ±1, got " + det.str());
    const int d = static_cast<int>(m.size());
    if (d < 2) throw InvalidInput("classification requires d >= 2");

    Eigen::MatrixXd a = to_eigen(m);
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    Eigen::VectorXcd vals = es.eigenvalues();

    std::vector<int> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](int x, int y) { return std::abs(vals[x]) > std::abs(vals[y]); });
    std::vector<double> moduli(d);
    for (int i = 0; i < d; ++i) moduli[i] = std::abs(vals[idx[i]]);

    if (!(moduli[0] > (1.0 + tol) * moduli[1]))
        return NotHyperbolic{NotHyperbolicReason::degenerateTop,
                             "maximal |eigenvalue| not simple within tolerance"};
    if (!(moduli[d - 2] > (1.0 + tol) * moduli[d - 1]))
        return NotHyperbolic{NotHyperbolicReason::degenerateBottom,
                             "minimal |eigenvalue| not simple within tolerance"};

    // A strictly dominant modulus forces a real eigenvalue, so the failure
    // mode left is a defective or numerically unstable extreme eigenspace.
    double lamTop = vals[idx[0]].real();
    double lamBot = vals[idx[d - 1]].real();
    ExtremeVectors right = extreme_eigenvectors(a, idx[0], idx[d - 1], lamTop, lamBot);
    if (!right.topOk || !right.bottomOk)
        return NotHyperbolic{NotHyperbolicReason::notSemisimpleAtExtremes,
                             "extreme eigenvector residual too large"};

    // Left eigenvectors (of the transpose) give the repelling hyperplanes:
    // the top-left eigenvector is orthogonal to span(v_2..v_d).
    Eigen::MatrixXd at = a.transpose();
    Eigen::EigenSolver<Eigen::MatrixXd> esT(at);
    Eigen::VectorXcd valsT = esT.eigenvalues();
    std::vector<int> idxT(d);
    std::iota(idxT.begin(), idxT.end(), 0);
    std::sort(idxT.begin(), idxT.end(),
              [&](int x, int y) { return std::abs(valsT[x]) > std::abs(valsT[y]); });
    ExtremeVectors left = extreme_eigenvectors(at, idxT[0], idxT[d - 1], valsT[idxT[0]].real(),
                                               valsT[idxT[d - 1]].real());
    if (!left.topOk || !left.bottomOk)
        return NotHyperbolic{NotHyperbolicReason::notSemisimpleAtExtremes,
                             "left extreme eigenvector residual too large"};

    HyperbolicProfile profile;
    profile.alpha = make_projective_point(right.top);
    profile.alphaInv = make_projective_point(right.bottom);
    profile.rho = ProjHyperplane{make_projective_point(left.top).v};
    profile.rhoInv = ProjHyperplane{make_projective_point(left.bottom).v};
    profile.topGap = moduli[0] / moduli[1];
    profile.bottomGap = moduli[d - 2] / moduli[d - 1];
    profile.moduli = std::move(moduli);
    return profile;
}

ProjectivePoint projection_pi(const ProjectivePoint& p, double tol) {
    if (p.v.size() < 2) throw InvalidInput("projection needs ambient dimension >= 2");
    double headNorm = std::sqrt(p.v[0] * p.v[0] + p.v[1] * p.v[1]);
    if (headNorm <= tol)
        throw UndefinedProjection("point lies in span(e_3..e_d) within tolerance");
    std::vector<double> out(p.v.size(), 0.0);
    out[0] = p.v[0];
    out[1] = p.v[1];
    return make_projective_point(std::move(out));
}

// ---------------------------------------------------------------------------
// Exact rational re-certification helpers.

namespace {

using BigRational = boost::rational<BigInt>;

BigRational brat_from_double(double x) {
    if (x == 0.0) return BigRational(0);
    int exp = 0;
    double mant = std::frexp(x, &exp);
    auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));  // exact by construction
    int e2 = exp - 53;
    BigInt num = m;
    if (e2 >= 0) {
        num <<= e2;
        return BigRational(num, BigInt(1));
    }
    return BigRational(num, BigInt(1) << (-e2));
}

std::vector<BigRational> brat_vector(const std::vector<double>& v) {
    std::vector<BigRational> out;
    out.reserve(v.size());
    for (double x : v) out.push_back(brat_from_double(x));
    return out;
}

BigRational brat_dot(const std::vector<BigRational>& a, const std::vector<BigRational>& b) {
    BigRational s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Δ(x, ball.center) <= ball.radius, exactly, on unnormalized x.
bool exact_in_closed_ball(const std::vector<BigRational>& x, const Ball& ball) {
    auto c = brat_vector(ball.center.v);
    BigRational r = brat_from_double(ball.radius);
    BigRational ip = brat_dot(x, c);
    BigRational xx = brat_dot(x, x), cc = brat_dot(c, c);
    if (xx == BigRational(0)) return false;
    return ip * ip >= (BigRational(1) - r * r) * xx * cc;
}

// Δ(x, ball.center) < ball.radius, exactly (strict interior).
bool exact_in_open_ball(const std::vector<BigRational>& x, const Ball& ball) {
    auto c = brat_vector(ball.center.v);
    BigRational r = brat_from_double(ball.radius);
    BigRational ip = brat_dot(x, c);
    BigRational xx = brat_dot(x, x), cc = brat_dot(c, c);
    if (xx == BigRational(0)) return false;
    return ip * ip > (BigRational(1) - r * r) * xx * cc;
}

bool exact_outside_every_open_ball(const std::vector<BigRational>& x, const BallSet& set) {
    for (const auto& ball : set.balls)
        if (exact_in_open_ball(x, ball)) return false;
    return true;
}

std::vector<BigRational> exact_apply(const IntMatrix& m, const std::vector<BigRational>& x) {
    const std::size_t d = m.size();
    std::vector<BigRational> out(d, BigRational(0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (m[i][j] != 0) out[i] += BigRational(m[i][j]) * x[j];
    return out;
}

// Deterministic samples of the closed ball: the center plus `grid` points
// at radial levels emphasizing the boundary sphere.
std::vector<ProjectivePoint> sample_ball(const Ball& ball, int grid, Rng& rng) {
    static const double kLevels[] = {1.0, 0.5, 1.0, 0.25, 0.75, 1.0};
    const std::size_t d = ball.center.v.size();
    std::vector<ProjectivePoint> out;
    out.push_back(ball.center);
    for (int i = 0; i < grid; ++i) {
        // Random tangent direction at the center.
        std::vector<double> u(d);
        double proj, norm;
        do {
            for (auto& x : u) x = static_cast<double>(rng.below(2'000'001)) / 1e6 - 1.0;
            proj = dot(u, ball.center.v);
            for (std::size_t k = 0; k < d; ++k) u[k] -= proj * ball.center.v[k];
            norm = norm_of(u);
        } while (norm < 1e-6);
        for (auto& x : u) x /= norm;

        double rho = std::min(1.0, ball.radius * kLevels[i % 6]);
        double theta = std::asin(rho);
        std::vector<double> x(d);
        for (std::size_t k = 0; k < d; ++k)
            x[k] = std::cos(theta) * ball.center.v[k] + std::sin(theta) * u[k];
        out.push_back(make_projective_point(std::move(x)));
    }
    return out;
}

double slack_inside(const ProjectivePoint& y, const BallSet& set) {
    double best = -1.0;
    for (const auto& ball : set.balls)
        best = std::max(best, ball.radius - proj_metric(y, ball.center));
    return best;
}

struct CheckState {
    double minSlack = std::numeric_limits<double>::infinity();
    bool inconclusive = false;
    double worstSlack = std::numeric_limits<double>::infinity();
    std::string detail;

    void note(double slack, double margin, const std::string& what) {
        minSlack = std::min(minSlack, slack);
        if (slack < margin && (!inconclusive || slack < worstSlack)) {
            inconclusive = true;
            worstSlack = slack;
            detail = what;
        }
    }
};

}  // namespace

SystemCheckResult check_rooted_system(const RootedSystem& system, int grid, double margin,
                                      double classifyTol) {
    const std::size_t count = system.elements.size();
    if (count == 0 || system.sets.size() != count)
        throw InvalidInput("system needs matching element and ball-set lists");
    for (const auto& set : system.sets) {
        if (set.balls.empty()) throw InvalidInput("each ball set needs at least one ball");
        for (const auto& ball : set.balls)
            if (!(ball.radius > 0)) throw InvalidInput("ball radii must be positive");
    }

    std::vector<HyperbolicProfile> profiles;
    for (std::size_t j = 0; j < count; ++j) {
        auto cls = classify_hyperbolic(system.elements[j], classifyTol);
        if (std::holds_alternative<NotHyperbolic>(cls))
            throw InvalidInput("element g_" + std::to_string(j) +
                               " is not hyperbolic: " + std::get<NotHyperbolic>(cls).detail);
        profiles.push_back(std::get<HyperbolicProfile>(cls));
    }

    CheckState state;

    // Clause 1: pairwise disjoint ball sets.
    for (std::size_t j = 0; j < count; ++j) {
        for (std::size_t k = j + 1; k < count; ++k) {
            for (const auto& bj : system.sets[j].balls) {
                for (const auto& bk : system.sets[k].balls) {
                    double slack = proj_metric(bj.center, bk.center) - bj.radius - bk.radius;
                    if (slack < 0) {
                        // Search a witness on the geodesic between centers.
                        std::vector<double> ck = bk.center.v;
                        if (dot(bj.center.v, ck) < 0)
                            for (auto& x : ck) x = -x;
                        for (int t = 0; t <= 32; ++t) {
                            std::vector<double> mid(ck.size());
                            double w = static_cast<double>(t) / 32.0;
                            for (std::size_t i = 0; i < ck.size(); ++i)
                                mid[i] = (1 - w) * bj.center.v[i] + w * ck[i];
                            if (norm_of(mid) < 1e-9) continue;
                            ProjectivePoint cand = make_projective_point(std::move(mid));
                            if (proj_metric(cand, bj.center) < bj.radius &&
                                proj_metric(cand, bk.center) < bk.radius) {
                                auto xr = brat_vector(cand.v);
                                if (exact_in_open_ball(xr, bj) && exact_in_open_ball(xr, bk)) {
                                    return SystemRefuted{
                                        1,
                                        "O_" + std::to_string(j) + " and O_" + std::to_string(k) +
                                            " overlap",
                                        cand.v, true};
                                }
                            }
                        }
                    }
                    state.note(slack, margin,
                               "disjointness of O_" + std::to_string(j) + " and O_" +
                                   std::to_string(k) + " unproven at slack " +
                                   std::to_string(slack));
                }
            }
        }
    }

    // Clauses 2 and 3: required fixed points inside, repelling hyperplanes
    // excluded from the closures. For j >= 1 the excluded hyperplanes are
    // those of g_0; for j = 0 they are those of every g_1..g_s.
    for (std::size_t j = 0; j < count; ++j) {
        const int clause = (j == 0) ? 3 : 2;
        for (const ProjectivePoint* alpha : {&profiles[j].alpha, &profiles[j].alphaInv}) {
            double slack = slack_inside(*alpha, system.sets[j]);
            if (slack < 0)
                return SystemRefuted{clause,
                                     "attracting point of g_" + std::to_string(j) +
                                         " (or inverse) lies outside O_" + std::to_string(j),
                                     alpha->v, false};
            state.note(slack, margin, "alpha containment for O_" + std::to_string(j));
        }
        std::vector<const ProjHyperplane*> excluded;
        if (j >= 1) {
            excluded = {&profiles[0].rho, &profiles[0].rhoInv};
        } else {
            for (std::size_t k = 1; k < count; ++k) {
                excluded.push_back(&profiles[k].rho);
                excluded.push_back(&profiles[k].rhoInv);
            }
        }
        for (const auto* hp : excluded) {
            for (const auto& ball : system.sets[j].balls) {
                double dist = point_hyperplane_distance(ball.center, *hp);
                double slack = dist - ball.radius;
                if (slack < 0) {
                    // Closest hyperplane point to the center: subtract the
                    // normal component; it lies inside the closed ball.
                    std::vector<double> w(ball.center.v);
                    double t = dot(ball.center.v, hp->normal);
                    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= t * hp->normal[i];
                    if (norm_of(w) > 1e-12) {
                        ProjectivePoint witness = make_projective_point(std::move(w));
                        return SystemRefuted{clause,
                                             "closure of O_" + std::to_string(j) +
                                                 " meets a repelling hyperplane",
                                             witness.v, false};
                    }
                }
                state.note(slack, margin,
                           "hyperplane exclusion for O_" + std::to_string(j));
            }
        }
    }

    // Clause 4: g_j^{±1}(closure O_k) ⊆ O_j on sampled grids.
    Rng rng(kGridSeed);
    std::vector<IntMatrix> inverses;
    inverses.reserve(count);
    for (const auto& g : system.elements) inverses.push_back(imat_inverse(g));
    for (std::size_t j = 0; j < count; ++j) {
        for (std::size_t k = 0; k < count; ++k) {
            if (j == k) continue;
            for (const auto& ball : system.sets[k].balls) {
                auto samples = sample_ball(ball, grid, rng);
                for (const auto& x : samples) {
                    for (int e = 0; e < 2; ++e) {
                        const IntMatrix& mat = (e == 0) ? system.elements[j] : inverses[j];
                        ProjectivePoint y = apply_matrix(mat, x);
                        double slack = slack_inside(y, system.sets[j]);
                        if (slack < 0) {
                            auto xr = brat_vector(x.v);
                            bool exact = exact_in_closed_ball(xr, ball) &&
                                         exact_outside_every_open_ball(exact_apply(mat, xr),
                                                                       system.sets[j]);
                            if (exact)
                                return SystemRefuted{
                                    4,
                                    "g_" + std::to_string(j) + (e ? "^-1" : "") +
                                        " maps a point of closure(O_" + std::to_string(k) +
                                        ") outside O_" + std::to_string(j),
                                    x.v, true};
                            state.note(slack, margin,
                                       "image containment float/exact disagreement for pair (" +
                                           std::to_string(j) + "," + std::to_string(k) + ")");
                            continue;
                        }
                        state.note(slack, margin,
                                   "image containment for pair (" + std::to_string(j) + "," +
                                       std::to_string(k) + ")");
                    }
                }
            }
        }
    }

    if (state.inconclusive) return SystemInconclusive{state.detail, state.worstSlack};
    return SystemVerified{state.minSlack};
}

FreeWitnessResult free_witness(const std::vector<IntMatrix>& mats, int maxLen,
                               std::size_t budget) {
    if (mats.empty()) throw InvalidInput("free witness needs at least one matrix");
    if (maxLen < 1) throw InvalidInput("maxLen must be positive");
    const std::size_t s = mats.size();
    for (const auto& m : mats) {
        BigInt det = imat_det(m);
        if (det != 1 && det != -1) throw InvalidInput("matrices must have det = ±1");
    }

    // Word count: sum over lengths of 2s · (2s-1)^(len-1).
    double projected = 0, level = 2.0 * static_cast<double>(s);
    for (int len = 1; len <= maxLen; ++len) {
        projected += level;
        level *= 2.0 * static_cast<double>(s) - 1.0;
    }
    if (projected > static_cast<double>(budget))
        throw ScaleExceeded("reduced-word count exceeds budget");

    // Letters interleaved (g_0, g_0^-1, g_1, g_1^-1, ...); iterative
    // deepening keeps the first hit shortlex-minimal.
    std::vector<IntMatrix> letters;
    letters.reserve(2 * s);
    for (std::size_t i = 0; i < s; ++i) {
        letters.push_back(mats[i]);
        letters.push_back(imat_inverse(mats[i]));
    }
    auto letter_symbol = [](std::size_t letter) {
        Letter l;
        l.symbol = "g" + std::to_string(letter / 2);
        l.exp = (letter % 2 == 0) ? 1 : -1;
        return l;
    };

    std::size_t checked = 0;
    std::vector<std::size_t> word;
    std::vector<IntMatrix> stack;
    bool found = false;
    RelationFound relation;
    int targetLen = 0;

    std::function<void()> extend = [&]() {
        for (std::size_t letter = 0; letter < letters.size(); ++letter) {
            if (!word.empty() && (word.back() ^ 1u) == letter) continue;  // stay reduced
            word.push_back(letter);
            stack.push_back(imat_mul(stack.back(), letters[letter]));
            ++checked;
            if (static_cast<int>(word.size()) == targetLen) {
                if (imat_is_projective_identity(stack.back())) {
                    Word w;
                    for (auto l : word) w.push_back(letter_symbol(l));
                    relation.word = std::move(w);
                    found = true;
                }
            } else {
                extend();
            }
            stack.pop_back();
            word.pop_back();
            if (found) return;
        }
    };

    for (targetLen = 1; targetLen <= maxLen && !found; ++targetLen) {
        word.clear();
        stack.assign(1, imat_identity(static_cast<int>(mats.front().size())));
        extend();
    }
    if (found) return relation;
    return NoRelationUpTo{maxLen, checked};
}

ProfileDistances pairwise_profile_distances(const std::vector<IntMatrix>& mats,
                                            double classifyTol) {
    ProfileDistances out;
    std::vector<ProjectivePoint> points;
    std::vector<ProjHyperplane> planes;
    for (std::size_t j = 0; j < mats.size(); ++j) {
        auto cls = classify_hyperbolic(mats[j], classifyTol);
        if (std::holds_alternative<NotHyperbolic>(cls))
            throw InvalidInput("element g_" + std::to_string(j) +
                               " is not hyperbolic: " + std::get<NotHyperbolic>(cls).detail);
        const auto& prof = std::get<HyperbolicProfile>(cls);
        points.push_back(prof.alpha);
        out.pointNames.push_back("a(g" + std::to_string(j) + ")");
        points.push_back(prof.alphaInv);
        out.pointNames.push_back("a(g" + std::to_string(j) + "^-1)");
        planes.push_back(prof.rho);
        out.hyperplaneNames.push_back("rho(g" + std::to_string(j) + ")");
        planes.push_back(prof.rhoInv);
        out.hyperplaneNames.push_back("rho(g" + std::to_string(j) + "^-1)");
    }
    out.pointToPoint.assign(points.size(), std::vector<double>(points.size(), 0.0));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < points.size(); ++j)
            out.pointToPoint[i][j] = proj_metric(points[i], points[j]);
    out.pointToHyperplane.assign(points.size(), std::vector<double>(planes.size(), 0.0));
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = 0; j < planes.size(); ++j)
            out.pointToHyperplane[i][j] = point_hyperplane_distance(points[i], planes[j]);
    return out;
}

RootedSystem system_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RootedSystem sys;
    unsigned power = j.value("power", 1u);
    for (const auto& mj : j.at("matrices")) {
        std::vector<std::vector<std::int64_t>> rows;
        for (const auto& row : mj) rows.push_back(row.get<std::vector<std::int64_t>>());
        IntMatrix m = imat_from_rows(rows);
        if (power > 1) m = imat_pow(m, power);
        sys.elements.push_back(std::move(m));
    }
    if (j.contains("ballSets")) {
        for (const auto& sj : j.at("ballSets")) {
            BallSet set;
            for (const auto& bj : sj.at("balls")) {
                Ball ball;
                ball.center = make_projective_point(bj.at("center").get<std::vector<double>>());
                ball.radius = bj.at("radius").get<double>();
                set.balls.push_back(std::move(ball));
            }
            sys.sets.push_back(std::move(set));
        }
    }
    return sys;
}

}
