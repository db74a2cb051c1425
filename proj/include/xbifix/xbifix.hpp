#ifndef XBIFIX_XBIFIX_HPP_
#define XBIFIX_XBIFIX_HPP_

#include "bounds.hpp"        // IWYU pragma: export
#include "clique.hpp"        // IWYU pragma: export
#include "code.hpp"          // IWYU pragma: export
#include "code_io.hpp"       // IWYU pragma: export
#include "construction.hpp"  // IWYU pragma: export
#include "errors.hpp"        // IWYU pragma: export
#include "fibonacci.hpp"     // IWYU pragma: export
#include "mpreal.hpp"        // IWYU pragma: export
#include "sync_sim.hpp"      // IWYU pragma: export
#include "word.hpp"          // IWYU pragma: export

#endif  // XBIFIX_XBIFIX_HPP_
