#pragma once

#include "casc/cascade.hpp"
#include "casc/motifs.hpp"
#include "casc/nullmodel.hpp"

// Plain single-threaded implementations of the three parallel kernels,
// written independently of the OpenMP code paths. Tests and the benchmark
// hold the parallel kernels to these results.
namespace casc::reference {

std::vector<Cascade> extract_all_cascades(const Corpus& corpus);

ShapeCensus shape_census(std::span<const Cascade> cascades, int cap = kDefaultShapeCap);

ModelAggregate run_realizations(const Corpus& corpus, const RewireConfig& config);

}  // namespace casc::reference
