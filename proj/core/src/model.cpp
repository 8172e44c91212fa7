#include "wids/model.hpp"

namespace wids {

std::vector<std::size_t> network_input_shape(Arch arch) {
  switch (arch) {
    case Arch::Conv2d2L:
    case Arch::Conv2d1L:
      return {kMatrixSide, kMatrixSide, 1};
    case Arch::Conv1d2L:
    case Arch::Conv1d1L:
      return {kMatrixCells, 1};
  }
  throw DataError("unknown architecture id");
}

}  // namespace wids
