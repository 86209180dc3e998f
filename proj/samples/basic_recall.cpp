// Stores a few thousand random messages and recovers one of them from half
// of its content.

#include <iostream>

#include "cliquenet/cliquenet.hpp"

int main() {
    namespace cn = cliquenet;

    const auto data = cn::gen_uniform({cn::Family::Uniform, 5000, 8, 256, 16.0, 7});
    cn::Network net(cn::NetworkTopology::uniform(8, 256));
    for (const auto& m : data)
        net.store(m);

    const auto& target = data[42];
    const auto result = net.retrieve(cn::Probe::erase(target, {1, 3, 5, 7}));

    std::cout << "density " << net.global_density() << ", iterations " << result.iterations << '\n';
    for (std::size_t i = 0; i < target.size(); ++i) {
        const auto& p = result.positions[i];
        std::cout << "position " << i << ": stored " << target[i] << ", retrieved ";
        if (p.unique())
            std::cout << p.symbol();
        else
            std::cout << (p.candidates.empty() ? "nothing" : "several candidates");
        std::cout << (p.known ? " (given)" : "") << '\n';
    }
}
