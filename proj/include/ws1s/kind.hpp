#pragma once

namespace ws1s {

enum class VarKind { kFirstOrder, kSecondOrder };

}  // namespace ws1s
