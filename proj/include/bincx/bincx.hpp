#pragma once

// bincx: exact chain complexes, binary acyclic complexes and their
// shortening to Nenashev generators, verified through Milnor torsion.

#include "bincx/bigint.hpp"
#include "bincx/binary.hpp"
#include "bincx/chain.hpp"
#include "bincx/field.hpp"
#include "bincx/fp.hpp"
#include "bincx/heller.hpp"
#include "bincx/io.hpp"
#include "bincx/matrix.hpp"
#include "bincx/rational.hpp"
#include "bincx/reduce.hpp"
#include "bincx/rng.hpp"
#include "bincx/torsion.hpp"
