op.paramTypes = TEEC_PARAM_TYPES(TEEC_NONE, TEEC_NONE, TEEC_MEMREF_TEMP_INPUT, TEEC_NONE);
op.params[2].tmpref.buffer = names;
op.params[2].tmpref.size = count;
res = TEEC_InvokeCommand(&sess, CMD_NAMES, &op, &err_origin);
