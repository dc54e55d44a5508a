#ifndef RINGQ_HOOKS_HPP_
#define RINGQ_HOOKS_HPP_

namespace ringq {

/// Instrumentation policy for the queues. The default compiles to nothing;
/// the conformance harness substitutes a policy whose pause_point() can park
/// a designated victim thread mid-operation.
struct NoHooks {
    static void pause_point() noexcept {}
};

}  // namespace ringq

#endif  // RINGQ_HOOKS_HPP_
