#pragma once

#include <json.hpp>
#include <sstream>
#include <stdexcept>
#include <string>

#include "feasibility.hpp"

namespace macrospin {

// ContextScenario wire format:
//
// {
//   "observables": [ {"id": "A", "outcomes": ["+1", "-1"]}, ... ],
//   "contexts":    [ ["A", "B"], ["A", "C"], ... ],
//   "marginals":   { "0": [ {"assignment": ["+1", "-1"],
//                            "probability": "1/4"}, ... ], ... }
// }
//
// Marginal tables are keyed by the decimal index of their context;
// probabilities may be JSON numbers, decimal strings, or "p/q" strings.
inline ContextScenario scenario_from_json(const nlohmann::json& doc)
{
    ContextScenario sc;
    if (!doc.is_object() || !doc.contains("observables") || !doc.contains("contexts"))
        throw std::invalid_argument("scenario: missing observables/contexts");

    std::map<std::string, std::size_t> obs_index;
    for (const auto& o : doc.at("observables")) {
        Observable obs;
        obs.id = o.at("id").get<std::string>();
        for (const auto& out : o.at("outcomes")) obs.outcomes.push_back(out.get<std::string>());
        if (obs_index.count(obs.id))
            throw std::invalid_argument("scenario: duplicate observable id " + obs.id);
        obs_index[obs.id] = sc.observables.size();
        sc.observables.push_back(std::move(obs));
    }

    for (const auto& ctx : doc.at("contexts")) {
        std::vector<std::size_t> indices;
        for (const auto& id : ctx) {
            auto it = obs_index.find(id.get<std::string>());
            if (it == obs_index.end())
                throw std::invalid_argument("scenario: unknown observable in context");
            indices.push_back(it->second);
        }
        sc.contexts.push_back(std::move(indices));
    }
    sc.marginals.resize(sc.contexts.size());

    if (doc.contains("marginals")) {
        for (const auto& [key, table] : doc.at("marginals").items()) {
            std::size_t c = 0;
            try {
                c = static_cast<std::size_t>(std::stoull(key));
            } catch (const std::exception&) {
                throw std::invalid_argument("scenario: marginal key \"" + key
                                            + "\" is not a context index");
            }
            if (c >= sc.contexts.size())
                throw std::invalid_argument("scenario: marginal key out of range");
            for (const auto& entry : table) {
                const auto& ctx = sc.contexts[c];
                const auto& assignment = entry.at("assignment");
                if (assignment.size() != ctx.size())
                    throw std::invalid_argument("scenario: assignment arity mismatch");
                std::vector<std::size_t> outcome;
                for (std::size_t i = 0; i < ctx.size(); ++i) {
                    const auto& outs = sc.observables[ctx[i]].outcomes;
                    std::string label = assignment[i].get<std::string>();
                    auto it = std::find(outs.begin(), outs.end(), label);
                    if (it == outs.end())
                        throw std::invalid_argument("scenario: unknown outcome \"" + label
                                                    + "\"");
                    outcome.push_back(static_cast<std::size_t>(it - outs.begin()));
                }
                const auto& p = entry.at("probability");
                Rational prob = p.is_string()
                                    ? detail::parse_probability(p.get<std::string>())
                                    : detail::parse_probability(p.dump());
                sc.marginals[c][outcome] = prob;
            }
        }
    }
    return sc;
}

inline std::string rational_str(const Rational& r)
{
    std::ostringstream os;
    os << r;
    return os.str();
}

inline nlohmann::json scenario_to_json(const ContextScenario& sc)
{
    nlohmann::json doc;
    doc["observables"] = nlohmann::json::array();
    for (const auto& obs : sc.observables)
        doc["observables"].push_back({{"id", obs.id}, {"outcomes", obs.outcomes}});
    doc["contexts"] = nlohmann::json::array();
    for (const auto& ctx : sc.contexts) {
        nlohmann::json ids = nlohmann::json::array();
        for (std::size_t idx : ctx) ids.push_back(sc.observables[idx].id);
        doc["contexts"].push_back(ids);
    }
    doc["marginals"] = nlohmann::json::object();
    for (std::size_t c = 0; c < sc.contexts.size(); ++c) {
        nlohmann::json table = nlohmann::json::array();
        for (const auto& [outcome, p] : sc.marginals[c]) {
            nlohmann::json assignment = nlohmann::json::array();
            for (std::size_t i = 0; i < outcome.size(); ++i)
                assignment.push_back(sc.observables[sc.contexts[c][i]].outcomes[outcome[i]]);
            table.push_back({{"assignment", assignment}, {"probability", rational_str(p)}});
        }
        doc["marginals"][std::to_string(c)] = table;
    }
    return doc;
}

inline nlohmann::json feasibility_to_json(const ContextScenario& sc,
                                          const FeasibilityResult& res)
{
    nlohmann::json doc;
    doc["feasible"] = res.feasible;
    doc["tolerance"] = res.tolerance;
    if (res.feasible) {
        nlohmann::json joint = nlohmann::json::array();
        for (const auto& [assignment, p] : res.joint) {
            nlohmann::json labels = nlohmann::json::array();
            for (std::size_t i = 0; i < assignment.size(); ++i)
                labels.push_back(sc.observables[i].outcomes[assignment[i]]);
            joint.push_back({{"assignment", labels}, {"probability", rational_str(p)}});
        }
        doc["certificate"] = {{"type", "joint_distribution"}, {"joint", joint}};
    } else {
        nlohmann::json cells = nlohmann::json::array();
        for (std::size_t i = 0; i < res.cells.size(); ++i) {
            const auto& cell = res.cells[i];
            nlohmann::json labels = nlohmann::json::array();
            for (std::size_t k = 0; k < cell.outcome.size(); ++k)
                labels.push_back(
                    sc.observables[sc.contexts[cell.context][k]].outcomes[cell.outcome[k]]);
            cells.push_back({{"context", cell.context},
                             {"assignment", labels},
                             {"coefficient", rational_str(res.functional[i])}});
        }
        doc["certificate"] = {{"type", "separating_functional"}, {"coefficients", cells}};
    }
    return doc;
}

} // namespace macrospin
