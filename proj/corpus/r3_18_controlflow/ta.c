if (params[0].memref.size < 16)
    return TEE_ERROR_SHORT_BUFFER;
if (TEE_MemCompare(params[0].memref.buffer, expected, 16) != 0) {
    return TEE_ERROR_SECURITY;
}
