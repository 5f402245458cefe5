#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    // variable assignment by shared memory value
    unsigned int cap = params[3].memref.size;

    if (cap < 16)
        return TEE_ERROR_SHORT_BUFFER;
    return TEE_SUCCESS;
}
