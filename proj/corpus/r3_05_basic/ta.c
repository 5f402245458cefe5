if (TEE_MemCompare(params[2].memref.buffer, "from_CA_to_TA", 13) != 0)
    return TEE_ERROR_SECURITY;
