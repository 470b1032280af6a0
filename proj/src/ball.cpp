#include "pptlab/ball.hpp"

#include <algorithm>
#include <unordered_map>

namespace pptlab {

std::vector<std::string> standard_generator_names(const GroupInstance& inst) {
    switch (inst.family) {
        case Family::Lamplighter:
        case Family::BaumslagSolitar: return {"a", "t"};
        case Family::Free: {
            std::vector<std::string> names;
            for (int i = 0; i < inst.rank; ++i) names.emplace_back(1, static_cast<char>('a' + i));
            return names;
        }
        case Family::FreeAbelian: {
            std::vector<std::string> names;
            for (int i = 0; i < inst.rank; ++i) names.push_back("e" + std::to_string(i + 1));
            return names;
        }
    }
    return {};
}

Ball enumerate_ball(const std::vector<GroupElement>& gens, int radius,
                    const BallParams& params) {
    if (gens.empty()) throw ValidationError("ball: empty generating set");
    if (radius < 0) throw ValidationError("ball: negative radius");
    const GroupInstance inst = gens.front().instance();

    // Augment with inverses, dropping duplicates, keeping a name per step.
    std::vector<GroupElement> steps;
    std::vector<std::string> names;
    auto add_step = [&](const GroupElement& g, const std::string& name) {
        for (const auto& s : steps)
            if (s == g) return;
        steps.push_back(g);
        names.push_back(name);
    };
    for (size_t i = 0; i < gens.size(); ++i) {
        if (!(gens[i].instance() == inst)) throw ValidationError("ball: mixed instances");
        std::string base =
            i < params.gen_names.size() ? params.gen_names[i] : "g" + std::to_string(i + 1);
        add_step(gens[i], base);
        add_step(inv(gens[i]), base + "^-1");
    }

    Ball ball;
    ball.radius = radius;

    std::unordered_map<std::string, size_t> seen;
    GroupElement id = GroupElement::identity(inst);
    ball.elements.push_back(id);
    ball.length.push_back(0);
    if (params.track_words) ball.word.emplace_back("e");
    seen.emplace(id.key(), 0);
    ball.sizes.push_back(1);

    std::vector<size_t> frontier{0};
    for (int level = 1; level <= radius; ++level) {
        // Sorted parent order gives the lexicographically least minimal word.
        std::sort(frontier.begin(), frontier.end(), [&](size_t a, size_t b) {
            if (params.track_words) return ball.word[a] < ball.word[b];
            return ball.elements[a].key() < ball.elements[b].key();
        });
        std::vector<size_t> next;
        for (size_t idx : frontier) {
            GroupElement parent = ball.elements[idx];
            for (size_t s = 0; s < steps.size(); ++s) {
                GroupElement child = mul(parent, steps[s]);
                std::string key = child.key();
                if (seen.count(key)) continue;
                if (static_cast<int64_t>(ball.elements.size()) >= params.budget)
                    throw ResourceError("ball: element budget " +
                                        std::to_string(params.budget) + " exceeded");
                seen.emplace(std::move(key), ball.elements.size());
                next.push_back(ball.elements.size());
                ball.elements.push_back(std::move(child));
                ball.length.push_back(level);
                if (params.track_words) {
                    const std::string& pw = ball.word[idx];
                    ball.word.push_back(pw == "e" ? names[s] : pw + " " + names[s]);
                }
            }
        }
        ball.sizes.push_back(ball.sizes.back() + static_cast<int64_t>(next.size()));
        frontier = std::move(next);
    }

    // Canonical result order: (word length, canonical key).
    std::vector<size_t> order(ball.elements.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        if (ball.length[a] != ball.length[b]) return ball.length[a] < ball.length[b];
        return ball.elements[a].key() < ball.elements[b].key();
    });
    Ball out;
    out.radius = radius;
    out.sizes = ball.sizes;
    out.elements.reserve(order.size());
    out.length.reserve(order.size());
    for (size_t i : order) {
        out.elements.push_back(std::move(ball.elements[i]));
        out.length.push_back(ball.length[i]);
        if (params.track_words) out.word.push_back(std::move(ball.word[i]));
    }
    return out;
}

}  // namespace pptlab
