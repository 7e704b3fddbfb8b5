#pragma once

#include "purif/partition.hpp"

namespace purif {

// chi^lambda(mu) by the Murnaghan-Nakayama rule, memoized on (lambda, remaining mu).
// Safe to call from several threads.
BigInt character(const Partition& lambda, const Partition& mu);

}  // namespace purif
