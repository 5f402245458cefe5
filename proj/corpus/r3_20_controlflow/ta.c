if (params[2].memref.size < 16)
    return TEE_ERROR_SHORT_BUFFER;
if (TEE_MemCompare(params[2].memref.buffer, expected, 16) != 0) {
    return TEE_ERROR_SECURITY;
}
