#include "wk/io.hpp"
#include "wk/solver.hpp"
#include <iostream>
int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 5;
    wk::SolverConfig config;
    config.n = n;
    config.progress = &std::cerr;
    wk::KernelResult r = wk::compute_kernel(config);
    std::cerr << "generators: " << r.generators.size() << " closed: " << r.closed << "\n";
    std::cout << wk::generator_table_text(r);
    return 0;
}
