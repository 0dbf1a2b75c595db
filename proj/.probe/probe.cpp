#include "wk/io.hpp"
#include "wk/solver.hpp"
#include <iostream>
using namespace wk;
int main() {
    int n = 5;
    Poly t = Poly::variable(n, 0);
    auto mk = [&](std::string name, const Poly& p, std::string prov, int round) {
        GeneratorInfo g; g.name = name; g.poly = normalize_primitive(p);
        g.sig = kernel_signature(g.poly, n); g.provenance = prov; g.round = round; return g;
    };
    SubalgebraBasis basis;
    basis.established.push_back(mk("t", t, "x0", 0));
    Poly d1 = normalize_primitive(tau(2, t, n)), d2 = normalize_primitive(tau(4, t, n));
    basis.established.push_back(mk("d1", d1, "tau_2(t)", 1));
    basis.established.push_back(mk("d2", d2, "tau_4(t)", 1));
    Poly tr1 = tau(4, d1, n), tr2 = tau(3, d1, n), tr3 = tau(1, d1, n);
    Poly p1 = tau(4, d2 * d2, n), p2 = tau(3, d2 * d2, n), si1 = tau(5, d2 * d2 * d2, n);
    basis.fresh.push_back(mk("tr1", tr1, "tau_4(d1)", 2));
    basis.fresh.push_back(mk("tr2", tr2, "tau_3(d1)", 2));
    basis.fresh.push_back(mk("tr3", tr3, "tau_1(d1)", 2));
    basis.fresh.push_back(mk("p1", p1, "tau_4(d2^2)", 2));
    basis.fresh.push_back(mk("p2", p2, "tau_3(d2^2)", 2));
    basis.fresh.push_back(mk("si1", si1, "tau_5(d2^3)", 2));
    for (auto& g : basis.all())
        std::cout << g.name << " " << g.sig.to_string() << " terms=" << g.poly.term_count() << std::endl;
    AcceptableSet as_ = acceptable_set(basis, n);
    std::cout << "accepted: " << as_.accepted.size() << std::endl;
    for (auto& g : as_.accepted)
        std::cout << "  " << g.sig.to_string() << "  " << g.provenance
                  << "  terms=" << g.poly.term_count() << std::endl;
    return 0;
}
