// Execution policy for the data-parallel kernels. Every kernel keeps a
// plain serial loop as the reference path; tests compare the two.
#pragma once

namespace tmset {

enum class Exec { serial, parallel };

}  // namespace tmset
