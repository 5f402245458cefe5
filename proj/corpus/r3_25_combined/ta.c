if (mode == 2) {
    if (TEE_MemCompare(params[0].memref.buffer, ref, 8))
        return TEE_ERROR_SECURITY;
}
