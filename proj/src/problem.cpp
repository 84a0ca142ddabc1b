#include "nnv/problem.hpp"

#include "nnv/errors.hpp"

namespace nnv {

std::string to_string(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::Violated: return "violated";
        default: return "unknown";
    }
}

VerificationProblem::VerificationProblem(Network net, GeometricSet in, GeometricSet out)
    : network(std::move(net)), input(std::move(in)), output(std::move(out)) {
    if (set_dim(input) != network.input_dim())
        throw InvalidArgument("input set dimension does not match network input width");
    if (set_dim(output) != network.output_dim())
        throw InvalidArgument("output set dimension does not match network output width");
}

}  // namespace nnv
