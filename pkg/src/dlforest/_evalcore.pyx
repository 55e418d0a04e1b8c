# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled evaluation kernel for closed-world instance checking.

Mirrors ``_evalpure``: postfix programs over individual bitsets, here packed
into little-endian uint64 word arrays.  Adjacency per object property is CSR
(absolute offsets into one flat successor array).
"""

import numpy as np

cimport numpy as cnp

ctypedef cnp.uint64_t u64
ctypedef cnp.int32_t i32

cdef enum:
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


cdef inline bint _testbit(u64[:, ::1] stack, Py_ssize_t row, i32 idx) noexcept nogil:
    return (stack[row, idx >> 6] >> (idx & 63)) & 1


def evaluate(i32[::1] ops, i32[::1] arg1, i32[::1] arg2,
             u64[:, ::1] class_bits, u64[::1] full_mask,
             i32[:, ::1] indptr, i32[::1] succ, int n):
    """Run one program; returns the resulting bitset as a uint64 array."""
    cdef Py_ssize_t n_ops = ops.shape[0]
    cdef Py_ssize_t words = full_mask.shape[0]
    out_arr = np.zeros(words, dtype=np.uint64)
    stack_arr = np.zeros((n_ops + 1, words), dtype=np.uint64)
    cdef u64[:, ::1] stack = stack_arr
    cdef u64[::1] out = out_arr

    cdef Py_ssize_t sp = 0, k, w, j
    cdef int op, a, b, i, count
    cdef i32 t
    cdef bint hit

    with nogil:
        for k in range(n_ops):
            op = ops[k]
            a = arg1[k]
            b = arg2[k]
            if op == OP_CLASS:
                for w in range(words):
                    stack[sp, w] = class_bits[a, w]
                sp += 1
            elif op == OP_ALL:
                for w in range(words):
                    stack[sp, w] = full_mask[w]
                sp += 1
            elif op == OP_NONE:
                for w in range(words):
                    stack[sp, w] = 0
                sp += 1
            elif op == OP_NOT:
                for w in range(words):
                    stack[sp - 1, w] = ~stack[sp - 1, w] & full_mask[w]
            elif op == OP_AND:
                for j in range(1, a):
                    for w in range(words):
                        stack[sp - a, w] = stack[sp - a, w] & stack[sp - a + j, w]
                sp -= a - 1
            elif op == OP_OR:
                for j in range(1, a):
                    for w in range(words):
                        stack[sp - a, w] = stack[sp - a, w] | stack[sp - a + j, w]
                sp -= a - 1
            elif op == OP_EXISTS:
                for w in range(words):
                    stack[sp, w] = 0
                for i in range(n):
                    hit = False
                    for j in range(indptr[a, i], indptr[a, i + 1]):
                        t = succ[j]
                        if _testbit(stack, sp - 1, t):
                            hit = True
                            break
                    if hit:
                        stack[sp, i >> 6] |= (<u64>1) << (i & 63)
                for w in range(words):
                    stack[sp - 1, w] = stack[sp, w]
            elif op == OP_FORALL:
                # vacuously true for individuals without successors
                for w in range(words):
                    stack[sp, w] = full_mask[w]
                for i in range(n):
                    for j in range(indptr[a, i], indptr[a, i + 1]):
                        t = succ[j]
                        if not _testbit(stack, sp - 1, t):
                            stack[sp, i >> 6] &= ~((<u64>1) << (i & 63))
                            break
                for w in range(words):
                    stack[sp - 1, w] = stack[sp, w]
            elif op == OP_MINCARD or op == OP_MAXCARD:
                for w in range(words):
                    stack[sp, w] = 0 if op == OP_MINCARD else full_mask[w]
                for i in range(n):
                    count = 0
                    for j in range(indptr[a, i], indptr[a, i + 1]):
                        t = succ[j]
                        if _testbit(stack, sp - 1, t):
                            count += 1
                    if op == OP_MINCARD:
                        if count >= b:
                            stack[sp, i >> 6] |= (<u64>1) << (i & 63)
                    else:
                        if count > b:
                            stack[sp, i >> 6] &= ~((<u64>1) << (i & 63))
                for w in range(words):
                    stack[sp - 1, w] = stack[sp, w]

    if sp != 1:
        raise ValueError("malformed program")
    for w in range(words):
        out[w] = stack[0, w]
    return out_arr
