#pragma once

namespace repalg {
struct GroupAction;
}
