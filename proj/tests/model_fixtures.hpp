#pragma once

// Reference local models used across the test suites. The same files ship
// under models/ for the CLI.
namespace fixtures {

inline const char* flat_r2 = R"(
[context]
base = ["x1", "x2"]
graded = []
truncation = {y_order = 4, jet_order = 3, max_arity = 2}
)";

inline const char* curved_r1 = R"(
[context]
base = ["x"]
truncation = {y_order = 4, jet_order = 3, max_arity = 2}

[connection]
"Gamma.x.x.x" = "x"
)";

inline const char* odd_line = R"(
[context]
base = ["x"]
graded = [{name = "theta", degree = 1}]
truncation = {y_order = 4, jet_order = 3, max_arity = 2}
)";

inline const char* derham_line = R"(
[context]
base = ["x"]
graded = [{name = "theta", degree = 1}]
truncation = {y_order = 4, jet_order = 3, max_arity = 2}

[q]
"x" = "theta"
)";

// Two even coordinates with genuine curvature, so the correction A is
// nonzero. Not part of the reference acceptance set.
inline const char* curved_r2 = R"(
[context]
base = ["u", "v"]
truncation = {y_order = 4, jet_order = 3, max_arity = 2}

[connection]
"Gamma.u.u.u" = "v"
)";

} // namespace fixtures
