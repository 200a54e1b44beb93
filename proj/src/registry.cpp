#include "wbl/breaker_strategies.hpp"
#include "wbl/diameter_builder.hpp"
#include "wbl/strategy.hpp"
#include "wbl/walker_unbiased.hpp"

namespace wbl {

std::unique_ptr<WalkerStrategy> make_walker(const std::string& name,
                                            const StrategyContext& ctx) {
    if (name == "random")
        return std::make_unique<RandomWalker>(
            derive_seed(ctx.config.rng_seed, 0x57));
    if (name == "thm1-cycle")
        return std::make_unique<Thm1CycleWalker>(ctx.profile);
    if (name == "prop-diameter-tree")
        return std::make_unique<PropTreeWalker>(ctx.profile);
    throw InvalidConfig("unknown walker strategy: " + name);
}

std::unique_ptr<BreakerStrategy> make_breaker(const std::string& name,
                                              const StrategyContext& ctx) {
    if (name == "isolate1") return std::make_unique<IsolateOneBreaker>();
    if (name == "isolateB") return std::make_unique<MultiIsolateBreaker>();
    if (name == "prevent-n2") return std::make_unique<PreventLongCycleBreaker>();
    if (name == "random")
        return std::make_unique<RandomBreaker>(
            derive_seed(ctx.config.rng_seed, 0xb2));
    throw InvalidConfig("unknown breaker strategy: " + name);
}

std::vector<std::string> walker_strategy_names() {
    return {"random", "thm1-cycle", "prop-diameter-tree"};
}

std::vector<std::string> breaker_strategy_names() {
    return {"isolate1", "isolateB", "prevent-n2", "random"};
}

} // namespace wbl
