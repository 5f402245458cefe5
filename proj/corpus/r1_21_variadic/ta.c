#include <string.h>
#include <tee_internal_api.h>

TEE_Result TA_InvokeCommandEntryPoint(void *sess_ctx, uint32_t cmd_id,
                                      uint32_t param_types, TEE_Param params[4])
{
    (void)sess_ctx;
    (void)cmd_id;
    (void)param_types;
    snprintf(params[2].memref.buffer, params[2].memref.size, "%08x%08x", hi, lo);
    return TEE_SUCCESS;
}
