"""Pure-Python evaluation kernel for closed-world instance checking.

Individual sets are bitmasks held in arbitrary-precision ints; bit *i*
stands for the individual with index *i*.  The compiled kernel in
``_evalcore`` implements the same postfix programs over packed word arrays;
both must return identical masks for identical inputs.
"""

from __future__ import annotations

OP_CLASS = 0
OP_ALL = 1
OP_NONE = 2
OP_NOT = 3
OP_AND = 4
OP_OR = 5
OP_EXISTS = 6
OP_FORALL = 7
OP_MINCARD = 8
OP_MAXCARD = 9


class PureEvalBackend:
    """Evaluates postfix programs over int bitmasks."""

    name = "pure"

    def __init__(self, n: int, class_masks: list[int], succ_masks: list[list[tuple[int, int]]]):
        # succ_masks[p] lists (individual index, successor mask) only for
        # individuals that have at least one successor via property p.
        self.n = n
        self.full_mask = (1 << n) - 1
        self.class_masks = class_masks
        self.succ_masks = succ_masks

    def run(self, program: list[tuple[int, int, int]]) -> int:
        full = self.full_mask
        stack: list[int] = []
        for op, a, b in program:
            if op == OP_CLASS:
                stack.append(self.class_masks[a])
            elif op == OP_ALL:
                stack.append(full)
            elif op == OP_NONE:
                stack.append(0)
            elif op == OP_NOT:
                stack[-1] = ~stack[-1] & full
            elif op == OP_AND:
                acc = stack[-a]
                for m in stack[len(stack) - a + 1:]:
                    acc &= m
                del stack[len(stack) - a:]
                stack.append(acc)
            elif op == OP_OR:
                acc = stack[-a]
                for m in stack[len(stack) - a + 1:]:
                    acc |= m
                del stack[len(stack) - a:]
                stack.append(acc)
            elif op == OP_EXISTS:
                filler = stack.pop()
                out = 0
                for i, succ in self.succ_masks[a]:
                    if succ & filler:
                        out |= 1 << i
                stack.append(out)
            elif op == OP_FORALL:
                # individuals without successors are included
                filler = stack.pop()
                out = full
                for i, succ in self.succ_masks[a]:
                    if succ & ~filler:
                        out &= ~(1 << i)
                stack.append(out)
            elif op == OP_MINCARD:
                filler = stack.pop()
                out = 0
                for i, succ in self.succ_masks[a]:
                    if (succ & filler).bit_count() >= b:
                        out |= 1 << i
                stack.append(out)
            elif op == OP_MAXCARD:
                filler = stack.pop()
                out = full
                for i, succ in self.succ_masks[a]:
                    if (succ & filler).bit_count() > b:
                        out &= ~(1 << i)
                stack.append(out)
            else:
                raise ValueError(f"bad opcode {op}")
        if len(stack) != 1:
            raise ValueError("malformed program")
        return stack[0]
