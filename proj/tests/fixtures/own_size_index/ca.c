op.paramTypes = TEEC_PARAM_TYPES(TEEC_MEMREF_TEMP_INPUT, TEEC_NONE, TEEC_NONE, TEEC_NONE);
op.params[0].tmpref.buffer = text;
op.params[0].tmpref.size = strlen(text);
res = TEEC_InvokeCommand(&sess, CMD_LAST, &op, &err_origin);
