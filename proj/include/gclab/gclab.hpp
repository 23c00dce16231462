#ifndef GCLAB_GCLAB_HPP
#define GCLAB_GCLAB_HPP

// Numerical laboratory for the over-smoothing behavior of deep graph
// convolutions: exact dense spectra of normalized propagators, distances to
// the degree-weighted invariant subspace, layer dynamics with contraction
// envelopes, DropEdge sampling and its re-normalized spectral bounds.

#include "gclab/bounds.hpp"
#include "gclab/dropedge.hpp"
#include "gclab/dynamics.hpp"
#include "gclab/eigen.hpp"
#include "gclab/errors.hpp"
#include "gclab/format.hpp"
#include "gclab/graph.hpp"
#include "gclab/io.hpp"
#include "gclab/matrix.hpp"
#include "gclab/model.hpp"
#include "gclab/propagator.hpp"
#include "gclab/rng.hpp"
#include "gclab/subspace.hpp"
#include "gclab/suites.hpp"
#include "gclab/svd.hpp"
#include "gclab/svg.hpp"
#include "gclab/synth.hpp"
#include "gclab/theory.hpp"

#endif
