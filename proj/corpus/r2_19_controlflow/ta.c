#include <string.h>
#include <tee_internal_api.h>

static int strict;

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_MEMREF_INPUT,
                                   TEE_PARAM_TYPE_NONE);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    char *in = params[2].memref.buffer;
    uint32_t len = params[2].memref.size;
    char buf[64];

    if (strict) {
        if (len > sizeof(buf))
            return TEE_ERROR_BAD_PARAMETERS;
    }
    memcpy(buf, in, len);
    return TEE_SUCCESS;
}
