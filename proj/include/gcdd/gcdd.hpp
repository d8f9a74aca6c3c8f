#pragma once

#include "gcdd/byte_sequence.hpp"
#include "gcdd/clustering.hpp"
#include "gcdd/dataset.hpp"
#include "gcdd/dissimilarity_matrix.hpp"
#include "gcdd/distances.hpp"
#include "gcdd/error.hpp"
#include "gcdd/functionals.hpp"
#include "gcdd/huffman.hpp"
#include "gcdd/linalg.hpp"
#include "gcdd/lzw.hpp"
#include "gcdd/mds.hpp"
#include "gcdd/pipeline.hpp"
#include "gcdd/measures.hpp"
#include "gcdd/random.hpp"
