#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    uint32_t exp = TEE_PARAM_TYPES(TEE_PARAM_TYPE_MEMREF_INPUT,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE,
                                   TEE_PARAM_TYPE_NONE);

    if (param_types != exp)
        return TEE_ERROR_BAD_PARAMETERS;
    unsigned int size = params[0].memref.size;
    // obtain the third last character in the input buffer
    char c = params[0].memref.buffer[size - 3];

    (void)c;
    return TEE_SUCCESS;
}
