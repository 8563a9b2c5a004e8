#pragma once

#include "config.hpp"
#include "report.hpp"

namespace taugeo::cli {

/// Runs every check registered for cfg.preset. Check names are dotted
/// ("qplane.curvature.worked"); cfg.suites keeps only names starting with one of
/// its entries. Checks under "<preset>.negative." pass exactly when the
/// underlying check fails with a witness. Library errors inside a check become
/// failures carrying the error text.
Report run_verify(const RunConfig& cfg);

/// Worked examples with their rendered values in Report::notes, plus the
/// checks that back each printed claim.
Report run_demo(const RunConfig& cfg);

}  // namespace taugeo::cli
