#include "gnvar/variational.hpp"

#include "gnvar/parallel.hpp"

#include <cmath>

namespace gnvar {

namespace {

const MultiIndexTable& table() { return MultiIndexTable::instance(); }

// channel-wise jet operations so the assembly code runs on plain and dual jets
Jet jderiv(const Jet& j, int mu) { return j.derivative(mu); }
Dual<Jet> jderiv(const Dual<Jet>& d, int mu) { return {d.v.derivative(mu), d.d.derivative(mu)}; }
Jet jtrunc(const Jet& j, int r) { return j.truncate(r); }
Dual<Jet> jtrunc(const Dual<Jet>& d, int r) { return {d.v.truncate(r), d.d.truncate(r)}; }

template <class T>
T jderiv_multi(T j, const MultiIndex& a) {
    for (int mu = 0; mu < 4; ++mu)
        for (int r = 0; r < a[mu]; ++r) j = jderiv(j, mu);
    return j;
}

template <class T>
struct ElPassT {
    T L;
    std::array<T, 4> dLdx;
    std::vector<T> P;
    std::vector<T> E;
};

// forward + reverse sweep + Euler-Lagrange assembly over any jet-like ring
template <class T>
ElPassT<T> el_pass_core(const Lagrangian& lag, const SlotLayout& L, const std::array<T, 4>& x,
                        const std::vector<T>& slots, const std::vector<T>& params,
                        int exec_order) {
    auto regs = lag.tape.run<T>(x, slots, params);
    const int out_reg = lag.tape.outputs.at(0);
    auto adj = lag.tape.adjoints<T>(regs, out_reg);

    ElPassT<T> rr;
    rr.L = regs[out_reg];
    const T zero = rr.L * 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        int xr = lag.tape.x_register(mu);
        rr.dLdx[mu] = (xr >= 0) ? adj[xr] : zero;
    }
    rr.P.assign(L.n_slots(), zero);
    for (int k = 0; k < L.n_slots(); ++k) {
        int sr = lag.tape.slot_register(k);
        if (sr >= 0) rr.P[k] = adj[sr];
    }

    const int e_order = exec_order - lag.max_slot_order;
    if (e_order < 0) throw EvalError("insufficient execution order for the E-L assembly");
    rr.E.reserve(L.n_components);
    for (int i = 0; i < L.n_components; ++i) {
        T acc = jtrunc(rr.P[L.value_slot(i)], e_order);
        for (int mid = 1; mid < SlotLayout::kPerComp; ++mid) {
            const MultiIndex& a = table().mi(mid);
            const int o = mi_order(a);
            if (o > lag.max_slot_order) continue;
            int sr = lag.tape.slot_register(L.slot(i, mid));
            if (sr < 0) continue;
            T term = jtrunc(jderiv_multi(rr.P[L.slot(i, mid)], a), e_order);
            acc = (o % 2 == 1) ? acc - term : acc + term;
        }
        rr.E.push_back(acc);
    }
    return rr;
}

std::vector<Dual<Jet>> dualize(const std::vector<Jet>& vals, const std::vector<Jet>& dots) {
    std::vector<Dual<Jet>> out;
    out.reserve(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) out.push_back({vals[i], dots[i]});
    return out;
}

std::vector<Dual<Jet>> dualize_const(const std::vector<Jet>& vals) {
    std::vector<Dual<Jet>> out;
    out.reserve(vals.size());
    for (const Jet& v : vals) out.push_back(Dual<Jet>(v));
    return out;
}

} // namespace

// ---------------------------------------------------------------------------

std::vector<Jet> eval_vertical_jets(const VerticalSlotFunction& v, const FieldSystem& sys,
                                    const std::array<double, 4>& point, int order) {
    SlotJets sb = build_slot_jets(sys, point, order, 1);
    std::vector<Jet> params =
        v.make_params ? v.make_params(point, order) : std::vector<Jet>{};
    auto regs = v.base.run<Jet>(sb.x, sb.slots, params);
    std::vector<Jet> out;
    out.reserve(v.base.outputs.size());
    for (int r : v.base.outputs) out.push_back(regs[r]);

    if (!v.d_terms.empty()) {
        SlotJets sa = build_slot_jets(sys, point, order + 1, 1);
        std::vector<Jet> params_hi =
            v.make_params ? v.make_params(point, order + 1) : std::vector<Jet>{};
        auto rega = v.aux.run<Jet>(sa.x, sa.slots, params_hi);
        for (const auto& dt : v.d_terms) {
            Jet d = rega[v.aux.outputs.at(dt.aux_index)].derivative(dt.mu);
            out[dt.comp] = out[dt.comp] + d * dt.coeff;
        }
    }
    return out;
}

ElPass euler_lagrange_pass(const Lagrangian& lag, const FieldSystem& sys,
                           const std::array<double, 4>& point, int exec_order) {
    SlotJets sj = build_slot_jets(sys, point, exec_order, lag.max_slot_order);
    auto core = el_pass_core<Jet>(lag, sys.layout(), sj.x, sj.slots,
                                  lag.params(point, exec_order), exec_order);
    return {core.L, core.dLdx, std::move(core.P), std::move(core.E)};
}

std::vector<double> euler_lagrange(const Lagrangian& lag, const FieldSystem& sys,
                                   const std::array<double, 4>& point) {
    ElPass p = euler_lagrange_pass(lag, sys, point, lag.max_slot_order);
    std::vector<double> out;
    out.reserve(p.E.size());
    for (const Jet& e : p.E) out.push_back(e.value());
    return out;
}

std::vector<std::array<double, 4>> momentum(const Lagrangian& lag, const FieldSystem& sys,
                                            const std::array<double, 4>& point) {
    if (lag.max_slot_order > 1)
        throw EvalError("momentum layout beyond first-order Lagrangians is unsupported");
    ElPass p = euler_lagrange_pass(lag, sys, point, 1);
    const SlotLayout L = sys.layout();
    std::vector<std::array<double, 4>> out(sys.n());
    for (int i = 0; i < sys.n(); ++i)
        for (int mu = 0; mu < 4; ++mu) out[i][mu] = p.P[L.deriv_slot(i, mu)].value();
    return out;
}

Jet horizontal_differential(const std::array<Jet, 4>& current) {
    Jet acc = current[0].derivative(0);
    for (int mu = 1; mu < 4; ++mu) acc += current[mu].derivative(mu);
    return acc;
}

AutJets build_aut_jets(const std::array<Expr, 4>& xi, const ConstMap& consts,
                       const std::array<double, 4>& point, int order) {
    AutJets a;
    for (int mu = 0; mu < 4; ++mu) {
        Jet full = eval_jet(xi[mu], point, order + 1, consts);
        a.xi[mu] = full.truncate(order);
        for (int nu = 0; nu < 4; ++nu) a.dxi[nu][mu] = full.derivative(nu);
    }
    return a;
}

Theorem1Result variational_lie_derivative(const Lagrangian& lag, const FieldSystem& sys,
                                          const VerticalSlotFunction& lift,
                                          const std::array<Expr, 4>& xi,
                                          const std::array<double, 4>& point) {
    if (lag.max_slot_order != 1)
        throw EvalError("theorem-1 assembly expects a first-order Lagrangian");
    const SlotLayout L = sys.layout();
    const int t = 1;
    SlotJets sj = build_slot_jets(sys, point, t, 1);
    auto pass = el_pass_core<Jet>(lag, L, sj.x, sj.slots, lag.params(point, t), t);
    std::vector<Jet> xiv = eval_vertical_jets(lift, sys, point, t);
    AutJets aut = build_aut_jets(xi, sys.consts, point, t);

    // left side: drag of the density along the prolonged lift
    double lhs = 0.0;
    for (int i = 0; i < sys.n(); ++i) {
        // (j Xi)^i_0 = Xi_V^i + y^i_mu xi^mu
        double lift0 = xiv[i].value();
        for (int mu = 0; mu < 4; ++mu)
            lift0 += sj.slots[L.deriv_slot(i, mu)].value() * aut.xi[mu].value();
        lhs += lift0 * pass.P[L.value_slot(i)].value();
        for (int mu = 0; mu < 4; ++mu) {
            // (j Xi)^i_mu = D_mu Xi_V^i + xi^nu y^i_{nu mu}
            double liftmu = xiv[i].derivative(mu).value();
            for (int nu = 0; nu < 4; ++nu) {
                MultiIndex e{};
                e[mu] += 1;
                liftmu += aut.xi[nu].value() * sj.slots[L.deriv_slot(i, nu)].partial(e);
            }
            lhs += liftmu * pass.P[L.deriv_slot(i, mu)].value();
        }
    }
    double divxi = 0.0;
    for (int mu = 0; mu < 4; ++mu) {
        lhs += aut.xi[mu].value() * pass.dLdx[mu].value();
        divxi += aut.dxi[mu][mu].value();
    }
    lhs += pass.L.value() * divxi;

    // right side: Xi_V . E + d_H (j Xi_V . p + xi . L)
    double rhs = 0.0;
    for (int i = 0; i < sys.n(); ++i) rhs += xiv[i].value() * pass.E[i].value();
    std::array<Jet, 4> current;
    for (int mu = 0; mu < 4; ++mu) {
        Jet acc = aut.xi[mu] * pass.L;
        for (int i = 0; i < sys.n(); ++i) acc += xiv[i] * pass.P[L.deriv_slot(i, mu)];
        current[mu] = acc;
    }
    rhs += horizontal_differential(current).value();

    return {lhs, rhs, std::abs(lhs - rhs)};
}

double second_variation(const Lagrangian& lag, const FieldSystem& sys,
                        const std::vector<Expr>& eta, const std::array<double, 4>& point) {
    using DD = Dual<Dual<Jet>>;
    const int t = 0;
    SlotJets sj = build_slot_jets(sys, point, t, lag.max_slot_order);
    std::vector<Jet> dots = build_direction_jets(sys, eta, point, t, lag.max_slot_order);
    const Jet zero = Jet::constant(0.0, t, point);

    std::array<DD, 4> x;
    for (int mu = 0; mu < 4; ++mu) x[mu] = DD(Dual<Jet>(sj.x[mu]));
    std::vector<DD> slots;
    slots.reserve(sj.slots.size());
    for (std::size_t k = 0; k < sj.slots.size(); ++k)
        slots.push_back(DD(Dual<Jet>(sj.slots[k], dots[k]), Dual<Jet>(dots[k], zero)));
    std::vector<DD> params;
    for (const Jet& pj : lag.params(point, t)) params.push_back(DD(Dual<Jet>(pj)));
    auto regs = lag.tape.run<DD>(x, slots, params);
    return regs[lag.tape.outputs.at(0)].d.d.value();
}

std::vector<double> jacobi_morphism(const Lagrangian& lag, const FieldSystem& sys,
                                    const std::vector<Expr>& eta,
                                    const std::array<double, 4>& point) {
    using D = Dual<Jet>;
    const int t = lag.max_slot_order;
    SlotJets sj = build_slot_jets(sys, point, t, lag.max_slot_order);
    std::vector<Jet> dots = build_direction_jets(sys, eta, point, t, lag.max_slot_order);

    std::array<D, 4> x;
    for (int mu = 0; mu < 4; ++mu) x[mu] = D(sj.x[mu]);
    auto pass = el_pass_core<D>(lag, sys.layout(), x, dualize(sj.slots, dots),
                                dualize_const(lag.params(point, t)), t);
    std::vector<double> out;
    out.reserve(pass.E.size());
    for (const D& e : pass.E) out.push_back(e.d.value());
    return out;
}

SelfAdjointness self_adjointness_check(const Lagrangian& lag, const FieldSystem& sys,
                                       const std::vector<Expr>& eta1,
                                       const std::vector<Expr>& eta2, const LatticeSpec& lattice,
                                       double onshell_tol) {
    using D = Dual<Jet>;
    const SlotLayout L = sys.layout();
    const int t = lag.max_slot_order;

    // reject perturbations that fail the periodicity probe
    for (const auto* eta : {&eta1, &eta2})
        for (int axis = 0; axis < 4; ++axis) {
            if (lattice.dims[axis] <= 1) continue;
            std::array<double, 4> a = lattice.lo, b = lattice.lo;
            a[(axis + 1) % 4] += 0.37 * (lattice.hi[(axis + 1) % 4] - lattice.lo[(axis + 1) % 4]);
            b = a;
            b[axis] += lattice.hi[axis] - lattice.lo[axis];
            for (const Expr& comp : *eta) {
                double va = comp.eval_value(a, sys.consts);
                double vb = comp.eval_value(b, sys.consts);
                if (std::abs(va - vb) > 1e-9 * std::max(1.0, std::abs(va)))
                    throw EvalError("non-periodic perturbation on the requested lattice");
            }
        }

    std::size_t n_points = 1;
    for (int d : lattice.dims) n_points *= static_cast<std::size_t>(d);
    double weight = 1.0;
    for (int axis = 0; axis < 4; ++axis)
        weight *= (lattice.hi[axis] - lattice.lo[axis]) / lattice.dims[axis];

    std::vector<double> q12(n_points, 0.0), q21(n_points, 0.0), emax(n_points, 0.0);
    parallel_for(n_points, [&](std::size_t idx) {
        std::array<double, 4> p;
        std::size_t rem = idx;
        for (int axis = 3; axis >= 0; --axis) {
            int k = static_cast<int>(rem % lattice.dims[axis]);
            rem /= lattice.dims[axis];
            p[axis] = lattice.lo[axis] +
                      (lattice.hi[axis] - lattice.lo[axis]) * k / lattice.dims[axis];
        }
        SlotJets sj = build_slot_jets(sys, p, t, lag.max_slot_order);
        std::array<D, 4> x;
        for (int mu = 0; mu < 4; ++mu) x[mu] = D(sj.x[mu]);

        auto eval_eta_values = [&](const std::vector<Expr>& eta) {
            std::vector<double> v(sys.n());
            for (int i = 0; i < sys.n(); ++i) v[i] = eta[i].eval_value(p, sys.consts);
            return v;
        };

        std::vector<Dual<Jet>> params = dualize_const(lag.params(p, t));
        std::vector<Jet> dots2 = build_direction_jets(sys, eta2, p, t, lag.max_slot_order);
        auto pass2 = el_pass_core<D>(lag, L, x, dualize(sj.slots, dots2), params, t);
        std::vector<Jet> dots1 = build_direction_jets(sys, eta1, p, t, lag.max_slot_order);
        auto pass1 = el_pass_core<D>(lag, L, x, dualize(sj.slots, dots1), params, t);

        std::vector<double> v1 = eval_eta_values(eta1), v2 = eval_eta_values(eta2);
        double a12 = 0, a21 = 0, em = 0;
        for (int i = 0; i < sys.n(); ++i) {
            a12 += v1[i] * pass2.E[i].d.value();
            a21 += v2[i] * pass1.E[i].d.value();
            em = std::max(em, std::abs(pass2.E[i].v.value()));
        }
        q12[idx] = a12 * weight;
        q21[idx] = a21 * weight;
        emax[idx] = em;
    });

    SelfAdjointness r;
    r.q12 = pairwise_sum(q12);
    r.q21 = pairwise_sum(q21);
    r.asymmetry = std::abs(r.q12 - r.q21) / std::max(std::abs(r.q12), 1.0);
    for (double e : emax) r.onshell_max = std::max(r.onshell_max, e);
    r.onshell_warning = r.onshell_max > onshell_tol;
    return r;
}

// ---------------------------------------------------------------------------
// Bergmann-Bianchi contraction
// ---------------------------------------------------------------------------

double bergmann_bianchi_check(const Lagrangian& lag, const FieldSystem& sys,
                              const VerticalSlotFunction& lift,
                              const std::array<double, 4>& point) {
    if (lag.max_slot_order != 1)
        throw EvalError("the Bergmann-Bianchi assembly expects a first-order Lagrangian");
    const SlotLayout L = sys.layout();
    const int n = sys.n();

    // Euler-Lagrange jets at order 2 (gradient pass at order 3)
    SlotJets sj3 = build_slot_jets(sys, point, 3, 1);
    auto p3 = el_pass_core<Jet>(lag, L, sj3.x, sj3.slots, lag.params(point, 3), 3);

    // slot Hessian of the density at order 2: one dual forward/reverse pass
    // per active first-order slot
    SlotJets sj2 = build_slot_jets(sys, point, 2, 1);
    const Jet zero2 = Jet::constant(0.0, 2, point);
    const Jet one2 = Jet::constant(1.0, 2, point);
    auto active = lag.tape.active_slots(lag.tape.outputs.at(0));

    std::vector<int> cols; // slot ids with |alpha| <= 1 that reach the output
    for (int i = 0; i < n; ++i)
        for (int mid = 0; mid <= 4; ++mid) {
            int k = L.slot(i, mid);
            if (active[k]) cols.push_back(k);
        }

    // hess[row local][col local], both over `cols`; jets at order 2
    std::vector<int> col_pos(L.n_slots(), -1);
    for (std::size_t c = 0; c < cols.size(); ++c) col_pos[cols[c]] = static_cast<int>(c);
    std::vector<std::vector<Jet>> hess(cols.size(),
                                       std::vector<Jet>(cols.size(), zero2));
    {
        using D = Dual<Jet>;
        std::array<D, 4> x2;
        for (int mu = 0; mu < 4; ++mu) x2[mu] = D(sj2.x[mu]);
        std::vector<D> params2 = dualize_const(lag.params(point, 2));
        std::vector<std::vector<Jet>> hess_cols(cols.size());
        parallel_for(cols.size(), [&](std::size_t c) {
            std::vector<D> slots;
            slots.reserve(sj2.slots.size());
            for (int k = 0; k < L.n_slots(); ++k)
                slots.push_back(D(sj2.slots[k], (k == cols[c]) ? one2 : zero2));
            auto regs = lag.tape.run<D>(x2, slots, params2);
            auto adj = lag.tape.adjoints<D>(regs, lag.tape.outputs.at(0));
            std::vector<Jet> column(cols.size(), zero2);
            for (std::size_t r = 0; r < cols.size(); ++r) {
                int sr = lag.tape.slot_register(cols[r]);
                if (sr >= 0) column[r] = adj[sr].d;
            }
            hess_cols[c] = std::move(column);
        });
        for (std::size_t c = 0; c < cols.size(); ++c)
            for (std::size_t r = 0; r < cols.size(); ++r) hess[r][c] = hess_cols[c][r];
    }
    auto H = [&](int slot_row, int slot_col) -> const Jet& {
        int r = col_pos[slot_row], c = col_pos[slot_col];
        if (r < 0 || c < 0) return zero2;
        return hess[r][c];
    };

    // lift jets at order 2 and lift slot gradients
    std::vector<Jet> xiv = eval_vertical_jets(lift, sys, point, 2);

    // base gradients at order 2
    std::vector<Jet> params2 =
        lift.make_params ? lift.make_params(point, 2) : std::vector<Jet>{};
    auto base_regs = lift.base.run<Jet>(sj2.x, sj2.slots, params2);
    std::vector<std::vector<Jet>> gbase(n); // per component: adjoint per slot id
    for (int i = 0; i < n; ++i) {
        auto adj = lift.base.adjoints<Jet>(base_regs, lift.base.outputs.at(i));
        gbase[i].assign(L.n_slots(), zero2);
        for (int k = 0; k < L.n_slots(); ++k) {
            int sr = lift.base.slot_register(k);
            if (sr >= 0) gbase[i][k] = adj[sr];
        }
    }
    // aux gradients at order 3
    std::vector<std::vector<Jet>> gaux;
    if (!lift.d_terms.empty()) {
        std::vector<Jet> params3 =
            lift.make_params ? lift.make_params(point, 3) : std::vector<Jet>{};
        auto aux_regs = lift.aux.run<Jet>(sj3.x, sj3.slots, params3);
        gaux.resize(lift.aux.outputs.size());
        const Jet zero3 = Jet::constant(0.0, 3, point);
        for (std::size_t j = 0; j < lift.aux.outputs.size(); ++j) {
            auto adj = lift.aux.adjoints<Jet>(aux_regs, lift.aux.outputs[j]);
            gaux[j].assign(L.n_slots(), zero3);
            for (int k = 0; k < L.n_slots(); ++k) {
                int sr = lift.aux.slot_register(k);
                if (sr >= 0) gaux[j][k] = adj[sr];
            }
        }
    }

    // dXi[i][slot j beta] = d Xi_V^i / d y^j_beta as a jet of order 2
    // (order |beta|-appropriate truncations happen at use sites)
    auto dxi_entry = [&](int i, int j, int mid) -> Jet {
        const MultiIndex& beta = table().mi(mid);
        const int ob = mi_order(beta);
        Jet acc = (ob <= 1) ? gbase[i][L.slot(j, mid)] : zero2;
        for (const auto& dt : lift.d_terms) {
            if (dt.comp != i) continue;
            const auto& ga = gaux[dt.aux_index];
            if (ob == 0) {
                acc = acc + ga[L.value_slot(j)].derivative(dt.mu).truncate(2) * dt.coeff;
            } else if (ob == 1) {
                int nu = -1;
                for (int d = 0; d < 4; ++d)
                    if (beta[d]) nu = d;
                Jet corr = ga[L.deriv_slot(j, nu)].derivative(dt.mu).truncate(2);
                if (nu == dt.mu) corr = corr + ga[L.value_slot(j)].truncate(2);
                acc = acc + corr * dt.coeff;
            } else {
                if (beta[dt.mu] > 0) {
                    MultiIndex gm = beta;
                    gm[dt.mu] -= 1;
                    int gmid = table().id_of(gm);
                    acc = acc + ga[L.slot(j, gmid)].truncate(2) * dt.coeff;
                }
            }
        }
        return acc;
    };

    // d omega / d y^j_beta, order |beta| jets, then E_j(omega) values
    double bb = 0.0;
    for (int j = 0; j < n; ++j) {
        double ej = 0.0;
        for (int mid = 0; mid < SlotLayout::kPerComp; ++mid) {
            const MultiIndex& beta = table().mi(mid);
            const int ob = mi_order(beta);
            Jet dOm = Jet::constant(0.0, ob, point);
            for (int i = 0; i < n; ++i) {
                Jet xivi = xiv[i].truncate(ob);
                // H-term: d E_i / d y^j_beta
                Jet hterm = Jet::constant(0.0, ob, point);
                if (ob == 0) {
                    Jet t0 = H(L.value_slot(i), L.value_slot(j));
                    for (int mu = 0; mu < 4; ++mu)
                        t0 = t0.truncate(1) - H(L.deriv_slot(i, mu), L.value_slot(j)).derivative(mu);
                    hterm = t0.truncate(0);
                } else if (ob == 1) {
                    int nu = -1;
                    for (int d = 0; d < 4; ++d)
                        if (beta[d]) nu = d;
                    Jet t1 = H(L.value_slot(i), L.deriv_slot(j, nu)).truncate(1) -
                             H(L.deriv_slot(i, nu), L.value_slot(j)).truncate(1);
                    for (int mu = 0; mu < 4; ++mu)
                        t1 = t1 - H(L.deriv_slot(i, mu), L.deriv_slot(j, nu)).derivative(mu);
                    hterm = t1;
                } else {
                    Jet t2 = Jet::constant(0.0, 2, point);
                    for (int mu = 0; mu < 4; ++mu) {
                        if (beta[mu] == 0) continue;
                        MultiIndex gm = beta;
                        gm[mu] -= 1;
                        int nu = -1;
                        for (int d = 0; d < 4; ++d)
                            if (gm[d]) nu = d;
                        t2 = t2 - H(L.deriv_slot(i, mu), L.deriv_slot(j, nu));
                    }
                    hterm = t2;
                }
                Jet term = xivi * hterm + dxi_entry(i, j, mid).truncate(ob) * p3.E[i].truncate(ob);
                dOm = dOm + term;
            }
            double contrib = jderiv_multi(dOm, beta).value();
            ej += (mi_order(beta) % 2 == 1) ? -contrib : contrib;
        }
        bb += xiv[j].value() * ej;
    }
    return bb;
}

double naturality_check(const Lagrangian& lag, const FieldSystem& sys,
                        const VerticalSlotFunction& lift, const std::array<Expr, 4>& xi,
                        const std::array<double, 4>& point) {
    const SlotLayout L = sys.layout();
    const int t = 1;
    SlotJets sj = build_slot_jets(sys, point, t, lag.max_slot_order);
    auto pass = el_pass_core<Jet>(lag, L, sj.x, sj.slots, lag.params(point, t), t);
    std::vector<Jet> xiv = eval_vertical_jets(lift, sys, point, 2);
    AutJets aut = build_aut_jets(xi, sys.consts, point, t);

    // mu = L_{j Xi_V} lambda as an order-1 jet
    Jet mu_jet = Jet::constant(0.0, 1, point);
    for (int i = 0; i < sys.n(); ++i) {
        mu_jet = mu_jet + xiv[i].truncate(1) * pass.P[L.value_slot(i)];
        for (int m = 0; m < 4; ++m)
            mu_jet = mu_jet + xiv[i].derivative(m).truncate(1) * pass.P[L.deriv_slot(i, m)];
    }
    double res = 0.0, div = 0.0;
    for (int g = 0; g < 4; ++g) {
        res += aut.xi[g].value() * mu_jet.derivative(g).value();
        div += aut.dxi[g][g].value();
    }
    return res + mu_jet.value() * div;
}

SplitResult split_lifted_vector(const std::array<Jet, 4>& xi_jets,
                                const std::vector<Jet>& lift_jets,
                                const std::vector<Jet>& field_jets, int s) {
    const int n = static_cast<int>(lift_jets.size());
    const int r = lift_jets.empty() ? 0 : lift_jets[0].order();
    if (r < s) throw EvalError("insufficient jet order for the requested split order");
    for (const Jet& y : field_jets)
        if (y.order() < s + 1) throw EvalError("field jets must carry order >= s + 1");

    SplitResult out;
    for (int mu = 0; mu < 4; ++mu) out.xi_h[mu] = xi_jets[mu].value();
    const int nmid = table().coeff_count(s);
    out.xi_v.assign(n, std::vector<double>(nmid, 0.0));
    out.prolonged.assign(n, std::vector<double>(nmid, 0.0));
    for (int i = 0; i < n; ++i) {
        // Xi_V^i along the section
        Jet xiv = lift_jets[i];
        for (int mu = 0; mu < 4; ++mu)
            xiv = xiv - field_jets[i].derivative(mu).truncate(r) * xi_jets[mu].truncate(r);
        for (int mid = 0; mid < nmid; ++mid) {
            const MultiIndex& a = table().mi(mid);
            out.xi_v[i][mid] = xiv.partial(a);
            double prol = out.xi_v[i][mid];
            for (int g = 0; g < 4; ++g) {
                MultiIndex ag = a;
                ag[g] += 1;
                prol += xi_jets[g].value() * field_jets[i].partial(ag);
            }
            out.prolonged[i][mid] = prol;
        }
    }
    return out;
}

} // namespace gnvar
