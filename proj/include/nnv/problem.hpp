#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nnv/geometry.hpp"
#include "nnv/network.hpp"

namespace nnv {

enum class Status { Holds, Violated, Unknown };

std::string to_string(Status s);

// The question: does x in `input` imply forward(network, x) in `output`?
struct VerificationProblem {
    Network network;
    GeometricSet input;
    GeometricSet output;

    VerificationProblem(Network net, GeometricSet in, GeometricSet out);
};

struct VerificationResult {
    Status status = Status::Unknown;
    std::optional<Vec> counter_example;
    std::optional<double> max_disturbance;
    std::vector<GeometricSet> reachable;

    static VerificationResult basic(Status s) { return {s, {}, {}, {}}; }
    static VerificationResult with_counter_example(Vec x) {
        return {Status::Violated, std::move(x), {}, {}};
    }
    static VerificationResult adversarial(Status s, double disturbance) {
        return {s, {}, disturbance, {}};
    }
    static VerificationResult reachability(Status s, std::vector<GeometricSet> reach) {
        return {s, {}, {}, std::move(reach)};
    }
};

}  // namespace nnv
