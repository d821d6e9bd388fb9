/* SPDX-License-Identifier: Apache-2.0
 *
 * Copyright 2026 The rendezvous authors
 */

#pragma once

// Helpers shared by the unit tests and the acceptance runner.

#include "rendezvous/semantics.hpp"

#include <optional>
#include <random>
#include <vector>

namespace rendezvous::testing {

inline Scalar random_fraction(std::mt19937_64& rng)
{
    const long den = static_cast<long>(rng() % 16) + 1;
    return Scalar(static_cast<long>(rng() % static_cast<std::uint64_t>(den + 1)), den);
}

// A random legal ASYNCH event; std::nullopt if neither robot can act.
inline std::optional<Event> random_legal(const Configuration& c, std::mt19937_64& rng)
{
    std::vector<Event> options;
    for (RobotId r : {0, 1}) {
        const RobotState& me = c.robot(r);
        if (me.terminated()) continue;
        if (me.waiting()) options.push_back(Look{r});
        if (std::holds_alternative<Computing>(me.phase)) options.push_back(FinishCompute{r});
        if (const Moving* mv = me.moving()) {
            if (c.rigidity.is_rigid()) {
                options.push_back(MoveStep{r, convex_point(me.position, mv->destination, random_fraction(rng))});
                options.push_back(FinishMove{r});
            } else {
                const Scalar need = min(c.rigidity.delta(), (mv->destination - mv->start).abs());
                const Scalar done = (me.position - mv->start).abs();
                if (done >= need) options.push_back(FinishMove{r});
                options.push_back(MoveStep{r, std::nullopt});
                options.push_back(MoveStep{r, convex_point(me.position, mv->destination, random_fraction(rng))});
            }
        }
    }
    if (options.empty()) return std::nullopt;
    return options[rng() % options.size()];
}

inline Configuration scaled(Configuration c, const Scalar& k)
{
    for (RobotState& r : c.robots) {
        r.position = r.position * k;
        if (auto* comp = std::get_if<Computing>(&r.phase)) {
            comp->snapshot.my_position = comp->snapshot.my_position * k;
            comp->snapshot.other_position = comp->snapshot.other_position * k;
        } else if (auto* mv = std::get_if<Moving>(&r.phase)) {
            mv->destination = mv->destination * k;
            mv->start = mv->start * k;
        }
    }
    return c;
}

inline Event scaled(Event e, const Scalar& k)
{
    if (auto* s = std::get_if<MoveStep>(&e); s && s->point) s->point = *s->point * k;
    if (auto* r = std::get_if<Round>(&e))
        for (auto& [id, p] : r->truncation) p = p * k;
    return e;
}

}  // namespace rendezvous::testing
