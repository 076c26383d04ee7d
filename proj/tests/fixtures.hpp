#pragma once

#include "sofft/theory.hpp"

namespace fixture {

inline sofft::LagrangianProblem plate() {
    sofft::JetChart c({"x", "y"}, {"u"}, 2);
    return {c, sofft::parse("1/2*(u[2,0]^2 + 2*u[1,1]^2 + u[0,2]^2 - 2*q*u)", c, {"q"}), {"q"}};
}

inline sofft::LagrangianProblem kdv() {
    sofft::JetChart c({"x", "t"}, {"u"}, 2);
    return {c, sofft::parse("1/2*(u[1,0]*u[0,1] - 2*u[1,0]^3 - u[2,0]^2)", c, {}), {}};
}

/// Klein-Gordon type first-order density viewed on J^2.
inline sofft::LagrangianProblem firstorder() {
    sofft::JetChart c({"x", "t"}, {"u"}, 2);
    return {c, sofft::parse("1/2*u[0,1]^2 - 1/2*u[1,0]^2 - 1/2*k*u^2", c, {"k"}), {"k"}};
}

} // namespace fixture
