TEE_Param *slot = &params[2];

if (TEE_MemCompare(slot->memref.buffer, "magic", 5) == 0)
    return TEE_SUCCESS;
