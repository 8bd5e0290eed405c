#pragma once

#include "nomafd/channel.hpp"
#include "nomafd/params.hpp"

namespace nomafd {

/// Instantaneous SIDNR at user l while decoding the stage-j message (j <= l).
/// psi2 is the effective gain of user l.
double sidnr(double psi1, double psi2, double psi3, const DerivedConstants& k, int l, int j);

/// Same, taking psi2 = draw.psi2_ordered[l-1].
double sidnr(const ChannelDraw& draw, const DerivedConstants& k, int l, int j);

/// True when user l fails any stage j <= l (SIDNR <= threshold, ties count as outage),
/// and unconditionally when a stage is infeasible.
bool outage_indicator(const ChannelDraw& draw, const DerivedConstants& k, int l);

/// The same event written as a region of (psi1, psi2, psi3) using delta-dagger.
bool outage_region(double psi1, double psi2, double psi3, const DerivedConstants& k, int l);
bool outage_region(const ChannelDraw& draw, const DerivedConstants& k, int l);

} // namespace nomafd
