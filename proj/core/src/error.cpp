#include "monoforms/error.hpp"

namespace monoforms {

const char* errc_name(errc code) {
  switch (code) {
    case errc::cycle_detected: return "CycleDetected";
    case errc::unknown_element: return "UnknownElement";
    case errc::duplicate_element: return "DuplicateElement";
    case errc::arity_out_of_range: return "ArityOutOfRange";
    case errc::chain_size_out_of_range: return "ChainSizeOutOfRange";
    case errc::level_out_of_range: return "LevelOutOfRange";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::unknown_name: return "UnknownName";
    case errc::domain_too_large: return "DomainTooLarge";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::arity_mismatch: return "ArityMismatch";
    case errc::table_shape_mismatch: return "TableShapeMismatch";
    case errc::not_cover_pair: return "NotCoverPair";
    case errc::non_constant_dot: return "NonConstantDot";
    case errc::not_monotone: return "NotMonotone";
    case errc::unbound_variable: return "UnboundVariable";
    case errc::unbound_unary: return "UnboundUnary";
    case errc::bad_length: return "BadLength";
    case errc::bad_char: return "BadChar";
    case errc::parse_error: return "ParseError";
    case errc::io_error: return "IoError";
    case errc::no_residual: return "NoResidual";
    case errc::algebra_defect: return "AlgebraDefect";
    case errc::non_monotone_part: return "NonMonotonePart";
    case errc::no_progress: return "NoProgress";
    case errc::iteration_overflow: return "IterationOverflow";
    case errc::not_representable: return "NotRepresentable";
  }
  return "UnknownError";
}

}  // namespace monoforms
